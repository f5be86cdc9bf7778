"""Square matrices over O_n elements, modelling M_k(O_n).

Dense representation; the sizes in play stay below a dozen. Entrywise
predicates report the first failing coordinate (1-based) so a rejected
matrix comes with a usable diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .algebra import Element
from .backends import EXACT, NumericScalar
from .scalars import CycloScalar

__all__ = ["OpMatrix", "PredicateOutcome", "ad_unitary"]

Coefficient = Union[int, Fraction, CycloScalar, NumericScalar]


@dataclass(frozen=True)
class PredicateOutcome:
    """Verdict of an entrywise matrix check, with the first failing entry."""

    ok: bool
    first_failure: Optional[tuple[int, int]] = None
    note: str = ""

    def __bool__(self):
        return self.ok


class OpMatrix:
    """A k x k matrix with entries in O_n."""

    __slots__ = ("size", "rank", "rows")

    def __init__(self, rows: Sequence[Sequence[Element]]):
        size = len(rows)
        if size < 1:
            raise ValueError("matrix must have size >= 1")
        rank = rows[0][0].rank
        frozen = []
        for row in rows:
            if len(row) != size:
                raise ValueError("matrix must be square")
            for entry in row:
                if entry.rank != rank:
                    raise ValueError(f"rank mismatch: {entry.rank} vs {rank}")
            frozen.append(tuple(row))
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "rows", tuple(frozen))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("OpMatrix is immutable")

    def __getitem__(self, hk: tuple[int, int]) -> Element:
        """Entry at 1-based (row, column)."""
        h, k = hk
        return self.rows[h - 1][k - 1]

    # -- constructors ---------------------------------------------------------

    @classmethod
    def identity(cls, size: int, rank: int, backend=EXACT) -> "OpMatrix":
        one = Element.one(rank, backend)
        zero = Element.zero(rank)
        return cls([[one if i == j else zero for j in range(size)] for i in range(size)])

    @classmethod
    def zero(cls, size: int, rank: int) -> "OpMatrix":
        z = Element.zero(rank)
        return cls([[z for _ in range(size)] for _ in range(size)])

    @classmethod
    def diagonal(cls, entries: Sequence[Element]) -> "OpMatrix":
        size = len(entries)
        zero = Element.zero(entries[0].rank)
        return cls([[entries[i] if i == j else zero for j in range(size)]
                    for i in range(size)])

    # -- arithmetic -------------------------------------------------------------

    def _check_shape(self, other: "OpMatrix"):
        if self.size != other.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "OpMatrix") -> "OpMatrix":
        if not isinstance(other, OpMatrix):
            return NotImplemented
        self._check_shape(other)
        return OpMatrix([[a + b for a, b in zip(ra, rb)]
                         for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "OpMatrix") -> "OpMatrix":
        if not isinstance(other, OpMatrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "OpMatrix":
        return OpMatrix([[-e for e in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, OpMatrix):
            self._check_shape(other)
            k = self.size
            out = []
            for i in range(k):
                row = []
                for j in range(k):
                    acc = Element.zero(self.rank)
                    for p in range(k):
                        acc = acc + self.rows[i][p] * other.rows[p][j]
                    row.append(acc)
                out.append(row)
            return OpMatrix(out)
        if isinstance(other, (int, Fraction, CycloScalar, NumericScalar)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CycloScalar, NumericScalar)):
            return self.scale(other)
        return NotImplemented

    def scale(self, coeff: Coefficient) -> "OpMatrix":
        return OpMatrix([[e.scale(coeff) for e in row] for row in self.rows])

    def adjoint(self) -> "OpMatrix":
        k = self.size
        return OpMatrix([[self.rows[j][i].adjoint() for j in range(k)] for i in range(k)])

    def power(self, exponent: int, backend=EXACT) -> "OpMatrix":
        if exponent < 0:
            raise ValueError("negative powers: use adjoint() for unitaries")
        acc = OpMatrix.identity(self.size, self.rank, backend)
        for _ in range(exponent):
            acc = acc * self
        return acc

    def entrywise(self, fn: Callable[[Element], Element]) -> "OpMatrix":
        return OpMatrix([[fn(e) for e in row] for row in self.rows])

    # -- comparisons ---------------------------------------------------------------

    def first_nonzero(self, max_terms: Optional[int] = None) -> Optional[tuple[int, int]]:
        """1-based coordinate of the first entry that is not zero in O_n, row-major."""
        for i, row in enumerate(self.rows):
            for j, entry in enumerate(row):
                if not entry.is_zero(max_terms=max_terms):
                    return (i + 1, j + 1)
        return None

    def is_zero(self, max_terms: Optional[int] = None) -> bool:
        return self.first_nonzero(max_terms=max_terms) is None

    def equals(self, other: "OpMatrix", max_terms: Optional[int] = None) -> bool:
        self._check_shape(other)
        return (self - other).is_zero(max_terms=max_terms)

    # -- predicates -------------------------------------------------------------------

    def _backend(self):
        for row in self.rows:
            for entry in row:
                for coeff in entry.terms.values():
                    from .backends import backend_for
                    return backend_for(coeff)
        return EXACT

    def is_isometry(self, max_terms: Optional[int] = None) -> PredicateOutcome:
        ident = OpMatrix.identity(self.size, self.rank, self._backend())
        bad = (self.adjoint() * self - ident).first_nonzero(max_terms=max_terms)
        if bad is not None:
            return PredicateOutcome(False, bad, "A*A differs from identity")
        return PredicateOutcome(True)

    def is_unitary(self, max_terms: Optional[int] = None) -> PredicateOutcome:
        left = self.is_isometry(max_terms=max_terms)
        if not left:
            return left
        ident = OpMatrix.identity(self.size, self.rank, self._backend())
        bad = (self * self.adjoint() - ident).first_nonzero(max_terms=max_terms)
        if bad is not None:
            return PredicateOutcome(False, bad, "AA* differs from identity")
        return PredicateOutcome(True)

    def is_selfadjoint(self, max_terms: Optional[int] = None) -> PredicateOutcome:
        bad = (self - self.adjoint()).first_nonzero(max_terms=max_terms)
        if bad is not None:
            return PredicateOutcome(False, bad, "A differs from A*")
        return PredicateOutcome(True)

    def __repr__(self):
        return f"OpMatrix(k={self.size}, n={self.rank})"


def ad_unitary(u: OpMatrix, a: OpMatrix) -> OpMatrix:
    """Conjugation u a u^*; callers are responsible for u being unitary."""
    return u * a * u.adjoint()
