"""
Order-complex cochains and reduced cohomology of interval windows Γ_{a,k}
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import config
from layered_graph import LayeredGraph, VertexId
from linalg import ONE, ZERO, rank
from utils import InputError, KoszulLabError

Chain = Tuple[VertexId, ...]  # strictly decreasing


@dataclass
class CochainDims:
    """[dim C^-1, dim C^0, …]; euler is dim C^-1 - dim C^0 + dim C^1 - …"""
    dims: List[int]

    @property
    def euler(self) -> int:
        return sum(d if i % 2 == 0 else -d for i, d in enumerate(self.dims))


def interval_pool(g: LayeredGraph, a: VertexId, k: int, include_window_bottom: Optional[bool] = None) -> List[VertexId]:
    """Vertices of the complex: strictly below a, within k levels.

    The default is the open window strictly between a and the window's bottom
    level: the whole bottom level is dropped, whether or not it is level 0.
    include_window_bottom=True follows the set-formula reading instead: it keeps
    the bottom level and drops only the global minimum. The two coincide when
    the level of a equals k.
    """
    a = VertexId(*a)
    if include_window_bottom is None:
        include_window_bottom = config.INCLUDE_WINDOW_BOTTOM
    if k < 0 or a.level < k:
        raise InputError(f"Interval needs the level of a ({a.level}) to be at least k ({k})")
    bottom = a.level - k
    pool = []
    for v in sorted(g.below(a)):
        if v == a or v.level < bottom:
            continue
        if v.level == bottom and (not include_window_bottom or v.level == 0):
            continue
        pool.append(v)
    return pool


def _chains(g: LayeredGraph, pool: Sequence[VertexId]) -> List[List[Chain]]:
    """chains[j + 1] lists the chains of j + 1 vertices, chains[0] = [()]"""
    members = set(pool)
    below = {v: sorted(w for w in g.below(v) if w != v and w in members) for v in pool}
    chains: List[List[Chain]] = [[()], [(v,) for v in sorted(pool)]]
    while chains[-1]:
        chains.append([c + (w,) for c in chains[-1] for w in below[c[-1]]])
    chains.pop()
    return chains


def cochain_dims(g: LayeredGraph, a: VertexId, k: int, include_window_bottom: Optional[bool] = None) -> CochainDims:
    pool = interval_pool(g, a, k, include_window_bottom)
    return CochainDims([len(level) for level in _chains(g, pool)])


def _coboundary_rank(lower: List[Chain], upper: List[Chain]) -> int:
    """Rank of δ: C(lower) → C(upper), (δf)(σ) = Σ_i (-1)^i f(σ without its i-th vertex)"""
    if not lower or not upper:
        return 0
    index = {c: i for i, c in enumerate(lower)}
    rows = []
    for sigma in upper:
        row = [ZERO] * len(lower)
        for i in range(len(sigma)):
            face = sigma[:i] + sigma[i + 1:]
            row[index[face]] = ONE if i % 2 == 0 else -ONE
        rows.append(row)
    return rank(len(lower), rows)


def cohomology_dims(g: LayeredGraph, a: VertexId, k: int, include_window_bottom: Optional[bool] = None) -> List[int]:
    """[dim H^-1, dim H^0, …] of the reduced cochain complex of the order complex"""
    pool = interval_pool(g, a, k, include_window_bottom)
    chains = _chains(g, pool)
    ranks = [_coboundary_rank(chains[i], chains[i + 1]) if i + 1 < len(chains) else 0
             for i in range(len(chains))]
    dims = [len(chains[i]) - ranks[i] - (ranks[i - 1] if i > 0 else 0) for i in range(len(chains))]

    cochain_sum = CochainDims([len(c) for c in chains]).euler
    cohomology_sum = CochainDims(dims).euler
    if cochain_sum != cohomology_sum:
        logging.error(f"Euler-Poincaré mismatch at {tuple(a)}, k={k}: {cochain_sum} vs {cohomology_sum}")
        raise KoszulLabError("Euler-Poincaré identity failed")
    return dims


def report_block(g: LayeredGraph, a: VertexId, k: int, include_window_bottom: Optional[bool] = None) -> Dict:
    """{"interval":{"a":[4,0],"k":4},"cochain":[1,7,13,6],"euler":1}"""
    cochains = cochain_dims(g, a, k, include_window_bottom)
    return {
        "interval": {"a": list(VertexId(*a)), "k": k},
        "cochain": cochains.dims,
        "euler": cochains.euler,
        "cohomology": cohomology_dims(g, a, k, include_window_bottom),
    }
