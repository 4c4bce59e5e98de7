"""
Exact subspace arithmetic over the rationals
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from utils import InputError

ZERO = QQ(0)
ONE = QQ(1)

Vector = Tuple  # tuple of QQ elements


def to_qq(x):
    """Coerce ints, Fractions and sympy numbers into the QQ domain"""
    if isinstance(x, int):
        return QQ(x)
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return QQ.convert(x)


def _rref(ambient_dim: int, rows: Sequence[Sequence]) -> Tuple[Tuple[Vector, ...], Tuple[int, ...]]:
    rows = [list(row) for row in rows if any(entry != ZERO for entry in row)]
    if not rows:
        return (), ()
    matrix = DomainMatrix(rows, (len(rows), ambient_dim), QQ)
    reduced, pivots = matrix.rref()
    basis = tuple(tuple(row) for row in reduced.to_list()[:len(pivots)])
    return basis, tuple(pivots)


class Subspace:
    """A subspace of QQ^n stored by its reduced row-echelon basis (canonical)"""

    __slots__ = ('ambient_dim', 'basis', 'pivots')

    def __init__(self, ambient_dim: int, basis: Tuple[Vector, ...] = (), pivots: Tuple[int, ...] = ()):
        # callers outside this module go through span(); basis must already be reduced
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = []
        for vector in vectors:
            if len(vector) != ambient_dim:
                raise InputError(f"Vector of length {len(vector)} in ambient dimension {ambient_dim}")
            rows.append([to_qq(x) for x in vector])
        basis, pivots = _rref(ambient_dim, rows)
        return cls(ambient_dim, basis, pivots)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        basis = tuple(tuple(ONE if c == r else ZERO for c in range(ambient_dim)) for r in range(ambient_dim))
        return cls(ambient_dim, basis, tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _same_ambient(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise InputError(f"Ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def __add__(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        if not other.basis or self.dim == self.ambient_dim:
            return self
        if not self.basis or other.dim == other.ambient_dim:
            return other
        basis, pivots = _rref(self.ambient_dim, self.basis + other.basis)
        return Subspace(self.ambient_dim, basis, pivots)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        if not self.basis or other.dim == other.ambient_dim:
            return self
        if not other.basis or self.dim == self.ambient_dim:
            return other
        return (self.perp() + other.perp()).perp()

    def perp(self) -> "Subspace":
        """Orthogonal complement under the coordinate pairing (the kernel of the basis matrix)"""
        n = self.ambient_dim
        if not self.basis:
            return Subspace.full(n)
        pivot_set = set(self.pivots)
        free = [c for c in range(n) if c not in pivot_set]
        rows = []
        for f in free:
            vector = [ZERO] * n
            vector[f] = ONE
            for row, p in zip(self.basis, self.pivots):
                vector[p] = -row[f]
            rows.append(vector)
        basis, pivots = _rref(n, rows)
        return Subspace(n, basis, pivots)

    def contains(self, vector: Sequence) -> bool:
        return (self + Subspace.span(self.ambient_dim, [vector])) == self

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._same_ambient(other)
        return (self + other) == other

    def embed(self, left_dim: int, right_dim: int) -> "Subspace":
        """V_left ⊗ S ⊗ V_right inside QQ^(left·n·right), lexicographic index order"""
        n = self.ambient_dim
        ambient = left_dim * n * right_dim
        basis = []
        pivots = []
        for left in range(left_dim):
            for row, p in zip(self.basis, self.pivots):
                for right in range(right_dim):
                    vector = [ZERO] * ambient
                    for c, entry in enumerate(row):
                        if entry != ZERO:
                            vector[(left * n + c) * right_dim + right] = entry
                    basis.append(tuple(vector))
                    pivots.append((left * n + p) * right_dim + right)
        # rows come out already reduced with increasing pivots
        return Subspace(ambient, tuple(basis), tuple(pivots))

    def to_json(self) -> List[List[str]]:
        return [[str(QQ.to_sympy(x)) for x in row] for row in self.basis]


def span(ambient_dim: int, vectors: Iterable[Sequence]) -> Subspace:
    return Subspace.span(ambient_dim, vectors)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a & b


def dim(a: Subspace) -> int:
    return a.dim


def equals(a: Subspace, b: Subspace) -> bool:
    a._same_ambient(b)
    return a == b


def quotient_dim(ambient_dim: int, s: Subspace) -> int:
    """dim(W / S) for S ⊆ W = QQ^ambient_dim"""
    if s.ambient_dim != ambient_dim:
        raise InputError(f"Subspace lives in dimension {s.ambient_dim}, not {ambient_dim}")
    return ambient_dim - s.dim


def rank(ambient_dim: int, vectors: Iterable[Sequence]) -> int:
    return Subspace.span(ambient_dim, vectors).dim


def unit_vector(ambient_dim: int, position: int) -> Vector:
    return tuple(ONE if c == position else ZERO for c in range(ambient_dim))


@dataclass
class DecompositionWitness:
    """W = ⊕ summands, with each input subspace the sum of the summands it lists"""
    ambient_dim: int
    summands: List[Subspace] = field(default_factory=list)
    members: List[List[int]] = field(default_factory=list)

    def verify(self, subspaces: Sequence[Subspace]) -> bool:
        total = Subspace.zero(self.ambient_dim)
        for summand in self.summands:
            total = total + summand
        if sum(s.dim for s in self.summands) != self.ambient_dim or total.dim != self.ambient_dim:
            return False
        for x, indices in zip(subspaces, self.members):
            part = Subspace.zero(self.ambient_dim)
            for i in indices:
                part = part + self.summands[i]
            if part != x:
                return False
        return len(self.members) == len(subspaces)

    def to_json(self):
        return {
            "summand_dims": [s.dim for s in self.summands],
            "members": [list(m) for m in self.members],
        }
