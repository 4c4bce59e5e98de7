"""
Quadratic presentation of B(Γ), its quadratic dual, and their Hilbert series
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import config
from layered_graph import LayeredGraph, StructuralMode, VertexId
from linalg import ONE, ZERO, Subspace, rank
from utils import InputError, LimitError

Run = Tuple[int, ...]  # strictly decreasing consecutive levels (b, b-1, ..., a)


def run_levels(b: int, a: int) -> Run:
    return tuple(range(b, a - 1, -1))


@dataclass
class QuadraticData:
    """Relation space R_B of B(Γ) and the adjacent-level components of the dual relations"""
    graph: LayeredGraph
    generators: List[VertexId]
    relations: Subspace
    dual: Dict[int, Subspace]  # j -> R!_{j+1,j} inside V_{j+1} ⊗ V_j
    _run_cache: Dict[Tuple[int, int], List[Subspace]] = field(default_factory=dict, repr=False)

    @property
    def generator_dims(self) -> Dict[int, int]:
        return {level: self.graph.profile[level] for level in range(1, len(self.graph.profile))}

    @property
    def total_generators(self) -> int:
        return len(self.generators)

    def dual_component(self, j: int) -> Subspace:
        """R!_{j+1,j}; zero outside 1 ≤ j ≤ N-1"""
        if j in self.dual:
            return self.dual[j]
        profile = self.graph.profile
        size = profile[j + 1] * profile[j] if 0 <= j < len(profile) - 1 else 0
        return Subspace.zero(size)

    def dual_relations(self) -> Subspace:
        """⊕_j R!_{j+1,j} placed inside V⁺ ⊗ V⁺"""
        position = {v: i for i, v in enumerate(self.generators)}
        n = len(self.generators)
        vectors = []
        for j, component in self.dual.items():
            upper, lower = self.graph.vertices(j + 1), self.graph.vertices(j)
            for row in component.basis:
                vector = [ZERO] * (n * n)
                for c, entry in enumerate(row):
                    if entry != ZERO:
                        u, w = upper[c // len(lower)], lower[c % len(lower)]
                        vector[position[u] * n + position[w]] = entry
                vectors.append(vector)
        return Subspace.span(n * n, vectors)

    def run_ambient_dim(self, b: int, a: int) -> int:
        return math.prod(self.graph.profile[level] for level in range(a, b + 1))

    def run_subspaces(self, b: int, a: int) -> List[Subspace]:
        """X_j = V_b ⊗ … ⊗ V_{j+1} ⊗ R!_{j,j-1} ⊗ V_{j-2} ⊗ … ⊗ V_a for j = b, …, a+1"""
        key = (b, a)
        if key not in self._run_cache:
            profile = self.graph.profile
            subspaces = []
            for j in range(b, a, -1):
                left = math.prod(profile[level] for level in range(j + 1, b + 1))
                right = math.prod(profile[level] for level in range(a, j - 1))
                subspaces.append(self.dual_component(j - 1).embed(left, right))
            self._run_cache[key] = subspaces
        return self._run_cache[key]

    def run_quotient_dim(self, b: int, a: int) -> int:
        """dim of V_b ⊗ … ⊗ V_a modulo the sum of the run's relation slots"""
        total = Subspace.zero(self.run_ambient_dim(b, a))
        for x in self.run_subspaces(b, a):
            total = total + x
        return total.ambient_dim - total.dim


def build_quadratic(g: LayeredGraph) -> QuadraticData:
    """R_B from the non-edge and lower-cover-sum relations; R! as mean-zero edge combinations"""
    violations = g.validate(StructuralMode.UNIQUE_MIN_ONLY)
    if violations:
        raise InputError(f"Cannot build B(Γ) for an invalid graph: {violations[0]}")

    generators = [v for v in g.vertices() if v.level >= 1]
    position = {v: i for i, v in enumerate(generators)}
    n = len(generators)

    vectors = []
    for u in generators:
        covers = g.lower_covers(u)
        for w in generators:
            if w not in covers:
                vector = [ZERO] * (n * n)
                vector[position[u] * n + position[w]] = ONE
                vectors.append(vector)
        # for |u| = 1 the lower-cover sum is the minimal vertex, not a generator
        if u.level >= 2:
            vector = [ZERO] * (n * n)
            for w in covers:
                vector[position[u] * n + position[w]] = ONE
            vectors.append(vector)
    relations = Subspace.span(n * n, vectors)

    dual = {}
    for j in range(1, g.height):
        z_lower = g.profile[j]
        rows = []
        for u in g.vertices(j + 1):
            covers = sorted(g.lower_covers(u))
            first = covers[0]
            for w in covers[1:]:
                vector = [ZERO] * (g.profile[j + 1] * z_lower)
                vector[u.index * z_lower + first.index] = ONE
                vector[u.index * z_lower + w.index] = -ONE
                rows.append(vector)
        dual[j] = Subspace.span(g.profile[j + 1] * z_lower, rows)

    logging.debug(f"B(Γ) for {list(g.profile)}: dim R_B = {relations.dim}, "
                  f"dim R! = {sum(s.dim for s in dual.values())}")
    return QuadraticData(g, generators, relations, dual)


def _check_bound(bound: int):
    if bound < 0:
        raise InputError(f"Degree bound must be nonnegative, got {bound}")
    if bound > config.MAX_SERIES_DEGREE:
        raise LimitError(f"Degree bound {bound} exceeds the limit {config.MAX_SERIES_DEGREE}")


def _paths(g: LayeredGraph, length: int) -> List[Tuple[VertexId, ...]]:
    """Descending edge paths of `length` generators, all at level ≥ 1"""
    if length == 0:
        return [()]
    paths = [(v,) for v in g.vertices() if v.level >= length]
    for _ in range(length - 1):
        paths = [p + (w,) for p in paths for w in sorted(g.lower_covers(p[-1]))]
    return paths


def hilbert_B(g: LayeredGraph, bound: int) -> List[int]:
    """Graded dimensions of B(Γ) in degrees 0..bound"""
    _check_bound(bound)
    if g.validate(StructuralMode.UNIQUE_MIN_ONLY):
        raise InputError("Hilbert series needs a valid graph with a unique minimal vertex")
    series = []
    for degree in range(bound + 1):
        if degree > g.height:
            series.append(0)
            continue
        paths = _paths(g, degree)
        if degree < 2:
            series.append(len(paths))
            continue
        # modulo non-edge monomials only edge paths survive; project each u·σ(u) relation onto them
        index = {p: i for i, p in enumerate(paths)}
        vectors = []
        for slot in range(degree - 1):
            for prefix in _paths(g, slot + 1):
                u = prefix[-1]
                if u.level < 2:
                    continue
                for suffix in _paths(g, degree - slot - 2):
                    if suffix and suffix[0].level != u.level - 2:
                        continue
                    vector = [ZERO] * len(paths)
                    for w in g.lower_covers(u):
                        word = prefix + (w,) + suffix
                        if word in index:
                            vector[index[word]] = ONE
                    if any(entry != ZERO for entry in vector):
                        vectors.append(vector)
        series.append(len(paths) - rank(len(paths), vectors))
    return series


def hilbert_B_dual(g: LayeredGraph, bound: int, q: Optional[QuadraticData] = None) -> List[int]:
    """Graded dimensions of B(Γ)^! = T(V⁺)/(R!) in degrees 0..bound.

    Every word splits into maximal descending level runs; the quotient factors as a tensor
    product over those runs, so the count is a sum over run decompositions.
    """
    _check_bound(bound)
    q = q or build_quadratic(g)
    top = g.height
    weights = {}
    for b in range(1, top + 1):
        for a in range(b, 0, -1):
            weights[(b, a)] = q.run_quotient_dim(b, a)

    # ending[n][a]: weighted count of length-n words whose last run ends at level a
    ending = [dict.fromkeys(range(1, top + 1), 0) for _ in range(bound + 1)]
    for n in range(1, bound + 1):
        for (b, a), weight in weights.items():
            length = b - a + 1
            if length > n or weight == 0:
                continue
            if length == n:
                ending[n][a] += weight
            else:
                # a run starting at b would have extended a previous run ending at b + 1
                ending[n][a] += weight * sum(
                    count for last, count in ending[n - length].items() if last != b + 1)
    return [1] + [sum(ending[n].values()) for n in range(1, bound + 1)]


def series_product(f: Sequence[int], h: Sequence[int], bound: int) -> List[int]:
    """Coefficients 0..bound of f·h"""
    return [sum(f[i] * h[n - i] for i in range(n + 1) if i < len(f) and n - i < len(h))
            for n in range(bound + 1)]


def series_inverse(f: Sequence[int], bound: int) -> List[int]:
    """Coefficients 0..bound of 1/f for an integer series with constant term ±1"""
    if not f or f[0] not in (1, -1):
        raise InputError("Only series with constant term ±1 are invertible over the integers")
    inverse = [f[0]]
    for n in range(1, bound + 1):
        acc = sum(f[i] * inverse[n - i] for i in range(1, n + 1) if i < len(f))
        inverse.append(-acc * f[0])
    return inverse


def hilbert_product(g: LayeredGraph, bound: int, q: Optional[QuadraticData] = None) -> List[int]:
    """h_{B^!}(t) · h_B(-t) up to degree `bound`"""
    q = q or build_quadratic(g)
    h_dual = hilbert_B_dual(g, bound, q)
    h = hilbert_B(g, bound)
    alternating = [c if n % 2 == 0 else -c for n, c in enumerate(h)]
    return series_product(h_dual, alternating, bound)


def default_bound(g: LayeredGraph) -> int:
    return config.NUMERIC_BOUND_FACTOR * g.height


def numerically_koszul(g: LayeredGraph, bound: Optional[int] = None,
                       q: Optional[QuadraticData] = None) -> Tuple[bool, Optional[int]]:
    """(True, None) when the Hilbert product is 1 through `bound`, else (False, first bad degree)"""
    bound = default_bound(g) if bound is None else bound
    if bound < default_bound(g):
        raise InputError(f"Numerical bound {bound} is below 2N = {default_bound(g)}")
    product = hilbert_product(g, bound, q)
    for degree in range(1, bound + 1):
        if product[degree] != 0:
            logging.debug(f"Hilbert product has coefficient {product[degree]} in degree {degree}")
            return False, degree
    return True, None
