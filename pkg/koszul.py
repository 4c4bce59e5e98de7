"""
Koszulity of B(Γ)^! (equivalently A(Γ)) through distributivity of relation-subspace collections
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

import config
from layered_graph import LayeredGraph, StructuralMode
from linalg import DecompositionWitness, Subspace
from quadratic import QuadraticData, Run, build_quadratic, default_bound, numerically_koszul, run_levels
from utils import InputError, LimitError

KOSZUL = 'koszul'
NON_KOSZUL = 'non-koszul'


@dataclass
class RunComponent:
    """The relation slots of one decreasing level run (b, …, a) inside V_b ⊗ … ⊗ V_a"""
    run: Run
    ambient_dim: int
    subspaces: List[Subspace]

    @property
    def slots(self) -> int:
        return len(self.subspaces)

    @property
    def bounds(self) -> Tuple[int, int]:
        return self.run[0], self.run[-1]


@dataclass
class LatticeFailure:
    """A lattice identity that does not hold: lhs ⊊ rhs or vice versa"""
    identity: str
    lhs: Subspace
    rhs: Subspace

    def to_json(self, with_bases: bool = False) -> Dict:
        data = {"identity": self.identity, "lhs_dim": self.lhs.dim, "rhs_dim": self.rhs.dim}
        if with_bases:
            data["lhs_basis"] = self.lhs.to_json()
            data["rhs_basis"] = self.rhs.to_json()
        return data


Witness = Union[DecompositionWitness, LatticeFailure]


def run_components(g: LayeredGraph, q: QuadraticData) -> List[RunComponent]:
    """Every decreasing run (b, …, a) with 1 ≤ a < b ≤ N, ordered by (b, a).

    Runs with a single slot (b = a + 1) are included; they always pass.
    """
    components = []
    for b in range(2, g.height + 1):
        for a in range(1, b):
            components.append(RunComponent(run_levels(b, a), q.run_ambient_dim(b, a), q.run_subspaces(b, a)))
    return components


def _median_sides(x1: Subspace, x2: Subspace, x3: Subspace) -> Tuple[Subspace, Subspace]:
    lhs = (x1 & x2) + (x2 & x3) + (x1 & x3)
    rhs = (x1 + x2) & (x2 + x3) & (x1 + x3)
    return lhs, rhs


def median_test(subspaces: Sequence[Subspace]) -> Tuple[bool, Optional[LatticeFailure]]:
    """Three subspaces generate a distributive lattice iff join of meets = meet of joins"""
    lhs, rhs = _median_sides(*subspaces)
    if lhs == rhs:
        return True, None
    return False, LatticeFailure("median", lhs, rhs)


def lattice_closure(elements: Iterable[Subspace], cap: Optional[int] = None) -> Set[Subspace]:
    """Smallest set containing `elements` closed under sum and intersection"""
    cap = cap or config.LATTICE_CLOSURE_CAP
    closed = set(elements)
    frontier = list(closed)
    while frontier:
        fresh = []
        current = list(closed)
        for a in frontier:
            for b in current:
                for c in (a + b, a & b):
                    if c not in closed:
                        closed.add(c)
                        fresh.append(c)
                        if len(closed) > cap:
                            raise LimitError(f"Lattice closure exceeded {cap} elements")
        frontier = fresh
    return closed


def incremental_test(ambient_dim: int, subspaces: Sequence[Subspace], cap: Optional[int] = None
                     ) -> Tuple[bool, Optional[LatticeFailure], Set[Subspace]]:
    """Add subspaces one at a time, checking both distributive laws against the closure so far"""
    lattice = lattice_closure([Subspace.zero(ambient_dim), Subspace.full(ambient_dim)], cap)
    for position, x in enumerate(subspaces):
        members = list(lattice)
        for i, a in enumerate(members):
            for b in members[i:]:
                lhs, rhs = x & (a + b), (x & a) + (x & b)
                if lhs != rhs:
                    return False, LatticeFailure(f"X{position + 1}∩(a+b) = (X{position + 1}∩a)+(X{position + 1}∩b)",
                                                 lhs, rhs), lattice
                lhs, rhs = x + (a & b), (x + a) & (x + b)
                if lhs != rhs:
                    return False, LatticeFailure(f"X{position + 1}+(a∩b) = (X{position + 1}+a)∩(X{position + 1}+b)",
                                                 lhs, rhs), lattice
        lattice = lattice_closure(members + [x], cap)
    return True, None, lattice


def decomposition_from_lattice(ambient_dim: int, lattice: Set[Subspace],
                               subspaces: Sequence[Subspace]) -> DecompositionWitness:
    """One summand per join-irreducible j: a complement of its unique lower cover inside j"""
    ordered = sorted(lattice, key=lambda s: (s.dim, s.basis))
    irreducibles = []
    summands = []
    for j in ordered:
        if j.dim == 0:
            continue
        lower = Subspace.zero(ambient_dim)
        for y in ordered:
            if y.dim < j.dim and (y + j) == j:
                lower = lower + y
        if lower == j:
            continue
        chosen = []
        grown = lower
        for row in j.basis:
            bigger = grown + Subspace.span(ambient_dim, [row])
            if bigger.dim > grown.dim:
                chosen.append(row)
                grown = bigger
        irreducibles.append(j)
        summands.append(Subspace.span(ambient_dim, chosen))
    members = [[i for i, j in enumerate(irreducibles) if (j + x) == x] for x in subspaces]
    return DecompositionWitness(ambient_dim, summands, members)


def is_distributive(ambient_dim: int, subspaces: Sequence[Subspace], cap: Optional[int] = None,
                    decompose: bool = True) -> Tuple[bool, Optional[Witness]]:
    """Whether the subspaces generate a distributive lattice, with a decomposition or a failed identity.

    With decompose=False a positive answer carries no witness.
    """
    for x in subspaces:
        if x.ambient_dim != ambient_dim:
            raise InputError(f"Subspace in dimension {x.ambient_dim} given for ambient dimension {ambient_dim}")
    if len(subspaces) > config.MAX_DISTRIBUTIVE_SUBSPACES:
        raise InputError(f"At most {config.MAX_DISTRIBUTIVE_SUBSPACES} subspaces are supported, got {len(subspaces)}")

    lattice = None
    if len(subspaces) == 3:
        ok, failure = median_test(subspaces)
        if not ok:
            return False, failure
    elif len(subspaces) > 3:
        ok, failure, lattice = incremental_test(ambient_dim, subspaces, cap)
        if not ok:
            return False, failure
    if not decompose:
        return True, None
    if lattice is None:
        lattice = lattice_closure([Subspace.zero(ambient_dim), Subspace.full(ambient_dim), *subspaces], cap)

    witness = decomposition_from_lattice(ambient_dim, lattice, subspaces)
    if not witness.verify(subspaces):
        logging.error(f"Decomposition witness failed its self-check in ambient dimension {ambient_dim}")
    return True, witness


@dataclass
class KoszulVerdict:
    """Outcome of the Koszulity decision for one graph"""
    status: str
    runs_checked: List[Run] = field(default_factory=list)
    failing_run: Optional[Run] = None
    failure: Optional[LatticeFailure] = None
    numeric: Tuple[bool, Optional[int]] = (True, None)
    numeric_bound: int = 0
    shortcut: bool = False

    @property
    def is_koszul(self) -> bool:
        return self.status == KOSZUL

    def to_json(self, with_bases: bool = False) -> Dict:
        data = {
            "status": self.status,
            "runs_checked": [list(r) for r in self.runs_checked],
            "numeric_koszul": self.numeric[0],
            "numeric_first_fail": self.numeric[1],
            "numeric_bound": self.numeric_bound,
            "pinch_shortcut": self.shortcut,
        }
        if self.failing_run is not None:
            data["run"] = list(self.failing_run)
            data.update(self.failure.to_json(with_bases))
        return data


class KoszulEngine:
    """Decides Koszulity run by run, optionally through the pinch decomposition"""

    def __init__(self, use_pinch: Optional[bool] = None, cap: Optional[int] = None, bound: Optional[int] = None):
        self.use_pinch = config.USE_PINCH_SHORTCUT if use_pinch is None else use_pinch
        self.cap = cap or config.LATTICE_CLOSURE_CAP
        self.bound = bound

    def _require_quadratic(self, g: LayeredGraph):
        violations = g.validate(StructuralMode.UNIQUE_MIN_ONLY)
        if violations:
            raise InputError(f"Invalid layered graph: {violations[0]}")
        if not g.is_uniform():
            raise InputError("Graph is not uniform: A(Γ) is not guaranteed to be quadratic")

    def direct(self, g: LayeredGraph, q: QuadraticData) -> Tuple[List[Run], Optional[Run], Optional[LatticeFailure]]:
        """Check every run; returns (runs checked, failing run, failed identity)"""
        checked = []
        failures = []
        for component in run_components(g, q):
            checked.append(component.run)
            ok, witness = is_distributive(component.ambient_dim, component.subspaces, self.cap, decompose=False)
            if not ok:
                logging.debug(f"Run {list(component.run)} is not distributive: {witness.identity}")
                failures.append((component.bounds, component.run, witness))
        if not failures:
            return checked, None, None
        _, run, witness = min(failures, key=lambda item: item[0])
        return checked, run, witness

    def _via_pinch(self, g: LayeredGraph) -> Optional[List[Run]]:
        """Runs checked in both parts when both are Koszul, else None"""
        k = g.pinch_points()[0]
        lower, upper = g.split_at(k)
        lower_verdict = self.is_koszul(lower)
        if not lower_verdict.is_koszul:
            return None
        upper_verdict = self.is_koszul(upper)
        if not upper_verdict.is_koszul:
            return None
        shifted = [tuple(level + k for level in run) for run in upper_verdict.runs_checked]
        return sorted(lower_verdict.runs_checked + shifted, key=lambda run: (run[0], run[-1]))

    def is_koszul(self, g: LayeredGraph, q: Optional[QuadraticData] = None) -> KoszulVerdict:
        self._require_quadratic(g)
        q = q or build_quadratic(g)
        # never below 2N of the graph at hand
        bound = max(self.bound or 0, default_bound(g))
        numeric = numerically_koszul(g, bound, q)

        verdict = None
        if self.use_pinch and g.pinch_points():
            runs = self._via_pinch(g)
            if runs is not None:
                verdict = KoszulVerdict(KOSZUL, runs, numeric=numeric, numeric_bound=bound, shortcut=True)
            else:
                logging.debug("Pinch shortcut abandoned: a part is not Koszul, checking directly")

        if verdict is None:
            checked, run, failure = self.direct(g, q)
            status = KOSZUL if run is None else NON_KOSZUL
            verdict = KoszulVerdict(status, checked, run, failure, numeric, bound)

        if not numeric[0] and verdict.is_koszul:
            logging.error(f"Graph {g.to_json()} is structurally Koszul but fails the numerical test "
                          f"in degree {numeric[1]}")
        return verdict

    def check_pinch_consistency(self, g: LayeredGraph) -> bool:
        """(both pinch parts Koszul) implies (direct check on the whole graph is Koszul)"""
        self._require_quadratic(g)
        points = g.pinch_points()
        if not points:
            raise InputError("Graph has no pinch point")
        lower, upper = g.split_at(points[0])
        if not (lower.is_uniform() and upper.is_uniform()):
            raise InputError("Pinch parts must both be uniform")
        if not (self.is_koszul(lower).is_koszul and self.is_koszul(upper).is_koszul):
            return True
        checked, run, _ = self.direct(g, build_quadratic(g))
        return run is None


def is_koszul(g: LayeredGraph, q: Optional[QuadraticData] = None, use_pinch: Optional[bool] = None,
              bound: Optional[int] = None) -> KoszulVerdict:
    return KoszulEngine(use_pinch=use_pinch, bound=bound).is_koszul(g, q)


def check_pinch_consistency(g: LayeredGraph) -> bool:
    return KoszulEngine().check_pinch_consistency(g)
