"""
Isomorphism-free enumeration of layered graphs for a layer profile
"""
import itertools
import logging
from typing import Dict, Iterator, List, Sequence, Tuple

import config
from layered_graph import LayeredGraph, StructuralMode, VertexId
from utils import InputError, format_profile

CanonicalKey = bytes

# rows[level][r] is a bitmask over the vertices of level-1 covered by vertex r of `level`
Rows = Tuple[Tuple[int, ...], ...]


def _rows_of(g: LayeredGraph) -> Rows:
    rows = [()]
    for level in range(1, len(g.profile)):
        level_rows = []
        for v in g.vertices(level):
            mask = 0
            for w in g.lower_covers(v):
                mask |= 1 << w.index
            level_rows.append(mask)
        rows.append(tuple(level_rows))
    return tuple(rows)


def _orders_for(codes: List[Tuple[int, ...]]) -> Iterator[Tuple[int, ...]]:
    """Every ordering of the rows that sorts `codes`; ties may be broken any way"""
    ranked = sorted(range(len(codes)), key=lambda r: codes[r])
    groups = [list(group) for _, group in itertools.groupby(ranked, key=lambda r: codes[r])]
    for choice in itertools.product(*(itertools.permutations(group) for group in groups)):
        yield tuple(r for part in choice for r in part)


def _canonize(profile: Sequence[int], rows: Rows) -> Tuple[CanonicalKey, Tuple[Tuple[int, ...], ...]]:
    """Lexicographically minimal biadjacency encoding over within-layer relabelings.

    Returns the key and, per level, the order (new position -> old index) realising it.
    Blocks are minimised level by level; tied partial relabelings are all kept, deduplicated
    by their last order since the next block only depends on it.
    """
    candidates: Dict[Tuple[int, ...], Tuple[Tuple[int, ...], ...]] = {(0,): ((0,),)}
    blocks = []
    for level in range(1, len(profile)):
        best = None
        survivors: Dict[Tuple[int, ...], Tuple[Tuple[int, ...], ...]] = {}
        for prev_order, chain in candidates.items():
            codes = [tuple((mask >> old) & 1 for old in prev_order) for mask in rows[level]]
            block = tuple(sorted(codes))
            if best is None or block < best:
                best = block
                survivors = {}
            if block == best:
                for order in _orders_for(codes):
                    survivors.setdefault(order, chain + (order,))
        blocks.append(best)
        candidates = survivors
    header = bytes([len(profile)] + list(profile))
    body = bytes(bit for block in blocks for row in block for bit in row)
    chain = candidates[min(candidates)]
    return header + body, chain


def _graph_from_rows(profile: Sequence[int], rows: Rows, chain=None) -> LayeredGraph:
    position = [dict((old, new) for new, old in enumerate(order)) for order in chain] if chain else None
    edges = []
    for level in range(1, len(profile)):
        for r, mask in enumerate(rows[level]):
            for c in range(profile[level - 1]):
                if (mask >> c) & 1:
                    tail = VertexId(level, position[level][r] if position else r)
                    head = VertexId(level - 1, position[level - 1][c] if position else c)
                    edges.append((tail, head))
    return LayeredGraph.from_edges(profile, edges)


def canonical_key(g: LayeredGraph) -> CanonicalKey:
    """Equal keys exactly for graphs related by level-preserving relabeling"""
    key, _ = _canonize(g.profile, _rows_of(g))
    return key


def canonical_form(g: LayeredGraph) -> LayeredGraph:
    """The relabeled copy of g whose biadjacency encoding is its canonical key"""
    _, chain = _canonize(g.profile, _rows_of(g))
    return _graph_from_rows(g.profile, _rows_of(g), chain)


def _level_choices(upper: int, lower: int, cover_lower: bool) -> List[Tuple[int, ...]]:
    """Biadjacency row tuples with nonzero rows (and, if asked, nonzero columns)"""
    full = (1 << lower) - 1
    choices = []
    for rows in itertools.product(range(1, full + 1), repeat=upper):
        if cover_lower:
            union = 0
            for mask in rows:
                union |= mask
            if union != full:
                continue
        choices.append(rows)
    return choices


def _check_profile(profile: Sequence[int]):
    if not profile:
        raise InputError("Empty profile")
    if profile[0] != 1:
        raise InputError(f"Profile {format_profile(profile)} needs z0 = 1 (unique minimal element)")
    if any(z < 1 for z in profile):
        raise InputError(f"Profile {format_profile(profile)} has an empty layer")
    if max(profile) > config.MAX_LAYER_SIZE:
        raise InputError(f"Profile {format_profile(profile)} exceeds the layer size limit {config.MAX_LAYER_SIZE}")


def labeled_graphs(profile: Sequence[int], mode: StructuralMode) -> Iterator[LayeredGraph]:
    """Every labeled graph on the profile that is valid under the mode"""
    _check_profile(profile)
    for rows in _labeled_rows(profile, mode):
        yield _graph_from_rows(profile, rows)


def _labeled_rows(profile: Sequence[int], mode: StructuralMode) -> Iterator[Rows]:
    if mode.single_top and profile[-1] != 1:
        return
    per_level = [
        _level_choices(profile[level], profile[level - 1], mode.needs_upper_cover)
        for level in range(1, len(profile))
    ]
    for combo in itertools.product(*per_level):
        yield ((),) + combo


class GraphEnumerator:
    """Generates one representative per isomorphism class, in ascending canonical-key order"""

    def __init__(self, mode: StructuralMode = StructuralMode.UNIQUE_MAX, uniform_only: bool = False):
        self.mode = mode
        self.uniform_only = uniform_only
        self.stats = {'labeled': 0, 'classes': 0, 'uniform': 0}

    def enumerate(self, profile: Sequence[int]) -> Iterator[LayeredGraph]:
        profile = tuple(profile)
        _check_profile(profile)
        self.stats = {'labeled': 0, 'classes': 0, 'uniform': 0}

        classes: Dict[CanonicalKey, LayeredGraph] = {}
        for rows in _labeled_rows(profile, self.mode):
            self.stats['labeled'] += 1
            key, chain = _canonize(profile, rows)
            if key not in classes:
                classes[key] = _graph_from_rows(profile, rows, chain)
        self.stats['classes'] = len(classes)

        emitted = 0
        for key in sorted(classes):
            graph = classes[key]
            uniform = graph.is_uniform()
            self.stats['uniform'] += uniform
            if self.uniform_only and not uniform:
                continue
            emitted += 1
            yield graph

        logging.info(f"Enumerated {format_profile(profile)} ({self.mode.value}): "
                     f"{self.stats['labeled']} labeled, {self.stats['classes']} classes, "
                     f"{self.stats['uniform']} uniform, {emitted} emitted")

    def count(self, profile: Sequence[int]) -> int:
        return sum(1 for _ in self.enumerate(profile))


def enumerate_graphs(profile: Sequence[int], mode: StructuralMode, uniform_only: bool = False) -> Iterator[LayeredGraph]:
    return GraphEnumerator(mode, uniform_only).enumerate(profile)


def count_graphs(profile: Sequence[int], mode: StructuralMode, uniform_only: bool = False) -> int:
    return GraphEnumerator(mode, uniform_only).count(profile)
