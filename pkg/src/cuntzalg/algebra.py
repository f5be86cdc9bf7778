"""Reduced Cuntz words S_alpha S_beta^* and their finite linear combinations.

Multiplication reduces with S_i^* S_j = delta_ij and prefix cancellation;
the sum relation sum_i S_i S_i^* = 1 is not applied during reduction, so two
syntactically different elements can denote the same algebra element. The
``equals`` decision procedure settles that: it splits a difference by gauge
degree, rewrites every class to a common co-word length with
S_a S_b^* = sum_{|mu|=m} S_{a mu} S_{b mu}^*, and checks that all collected
coefficients vanish. Words of fixed shape are linearly independent, so the
test is exact in both directions over the exact backend.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Union

from .backends import EXACT, NumericScalar, backend_for
from .scalars import CycloScalar

__all__ = [
    "DEFAULT_MAX_TERMS",
    "Element",
    "ExpansionLimitError",
    "Monomial",
    "gauge_components",
    "is_isometry",
    "is_projection",
    "is_selfadjoint",
    "is_unitary",
    "monomial_product",
]

DEFAULT_MAX_TERMS = 2_000_000

Scalar = Union[CycloScalar, NumericScalar]
Coefficient = Union[Scalar, int, Fraction]


class ExpansionLimitError(RuntimeError):
    """Raised when a level expansion would exceed the configured term cap."""

    def __init__(self, projected: int, limit: int):
        super().__init__(f"expansion would produce {projected} words, limit is {limit}")
        self.projected = projected
        self.limit = limit


class Monomial:
    """The word S_alpha S_beta^*; the empty/empty pair is the unit.

    Immutable and hashable (hash precomputed; these are dict keys on every
    arithmetic path).
    """

    __slots__ = ("alpha", "beta", "_hash")

    def __init__(self, alpha: tuple[int, ...], beta: tuple[int, ...]):
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "_hash", hash((alpha, beta)))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Monomial is immutable")

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.alpha == other.alpha and self.beta == other.beta

    @property
    def degree(self) -> int:
        return len(self.alpha) - len(self.beta)

    @property
    def is_unit(self) -> bool:
        return not self.alpha and not self.beta

    def adjoint(self) -> "Monomial":
        return Monomial(self.beta, self.alpha)

    def __repr__(self):
        return f"Monomial({self.alpha}, {self.beta})"


UNIT = Monomial((), ())


def monomial_product(m1: Monomial, m2: Monomial) -> Optional[Monomial]:
    """S_a S_b^* . S_c S_d^*, or None when S_b^* S_c collapses to zero."""
    b, c = m1.beta, m2.alpha
    if len(c) >= len(b):
        if c[: len(b)] != b:
            return None
        return Monomial(m1.alpha + c[len(b):], m2.beta)
    if b[: len(c)] != c:
        return None
    return Monomial(m1.alpha, m2.beta + b[len(c):])


def _check_letters(rank: int, word: tuple[int, ...]):
    for letter in word:
        if not 1 <= letter <= rank:
            raise ValueError(f"generator index {letter} out of range 1..{rank}")


class Element:
    """A finite linear combination of reduced words over O_n, n >= 2.

    ``terms`` maps Monomial -> coefficient with zero coefficients pruned.
    Instances are immutable by convention; operations return new elements.
    """

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Mapping[Monomial, Coefficient] | Iterable = ()):
        if rank < 2:
            raise ValueError(f"rank must be >= 2, got {rank}")
        object.__setattr__(self, "rank", rank)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, Scalar] = {}
        for mono, coeff in items:
            _check_letters(rank, mono.alpha)
            _check_letters(rank, mono.beta)
            if isinstance(coeff, (int, Fraction)):
                coeff = EXACT.rational(coeff)
            if not coeff.is_zero():
                if mono in clean:
                    acc = clean[mono] + coeff
                    if acc.is_zero():
                        del clean[mono]
                    else:
                        clean[mono] = acc
                else:
                    clean[mono] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Element is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def _raw(cls, rank: int, terms: dict) -> "Element":
        """Internal fast path: terms must be pruned and letter-valid already."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "rank", rank)
        object.__setattr__(obj, "terms", terms)
        return obj

    @classmethod
    def zero(cls, rank: int) -> "Element":
        return cls(rank)

    @classmethod
    def one(cls, rank: int, backend=EXACT) -> "Element":
        return cls(rank, {UNIT: backend.rational(1)})

    @classmethod
    def generator(cls, rank: int, index: int, backend=EXACT) -> "Element":
        """S_index. Indices are 1-based and reduced into 1..rank mod rank."""
        index = (index - 1) % rank + 1
        return cls(rank, {Monomial((index,), ()): backend.rational(1)})

    @classmethod
    def word(cls, rank: int, alpha: Iterable[int], beta: Iterable[int] = (),
             coeff: Coefficient = 1) -> "Element":
        return cls(rank, {Monomial(tuple(alpha), tuple(beta)): coeff})

    # -- ring operations -------------------------------------------------------

    def _check_rank(self, other: "Element"):
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        self._check_rank(other)
        acc = dict(self.terms)
        for mono, coeff in other.terms.items():
            if mono in acc:
                total = acc[mono] + coeff
                if total.is_zero():
                    del acc[mono]
                else:
                    acc[mono] = total
            else:
                acc[mono] = coeff
        return Element._raw(self.rank, acc)

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element._raw(self.rank, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check_rank(other)
            acc: dict[Monomial, Scalar] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    prod = monomial_product(m1, m2)
                    if prod is None:
                        continue
                    coeff = c1 * c2
                    if prod in acc:
                        acc[prod] = acc[prod] + coeff
                    else:
                        acc[prod] = coeff
            return Element._raw(self.rank,
                                {m: c for m, c in acc.items() if not c.is_zero()})
        if isinstance(other, (int, Fraction, CycloScalar, NumericScalar)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CycloScalar, NumericScalar)):
            return self.scale(other)
        return NotImplemented

    def scale(self, coeff: Coefficient) -> "Element":
        scaled = {m: c * coeff for m, c in self.terms.items()}
        return Element._raw(self.rank,
                            {m: c for m, c in scaled.items() if not c.is_zero()})

    def adjoint(self) -> "Element":
        return Element._raw(self.rank,
                            {m.adjoint(): c.conjugate() for m, c in self.terms.items()})

    # -- structure --------------------------------------------------------------

    def gauge_components(self) -> dict[int, "Element"]:
        """Split terms by gauge degree |alpha| - |beta|; the parts sum back to self."""
        buckets: dict[int, dict[Monomial, Scalar]] = {}
        for mono, coeff in self.terms.items():
            buckets.setdefault(mono.degree, {})[mono] = coeff
        return {deg: Element._raw(self.rank, terms)
                for deg, terms in sorted(buckets.items())}

    def expand_to_level(self, level: int, max_terms: Optional[int] = None) -> "Element":
        """Rewrite every term so its co-word has length ``level``.

        Uses S_a S_b^* = sum over words mu of length level-|b| of
        S_{a mu} S_{b mu}^*; requires level >= |b| for every term.
        """
        limit = DEFAULT_MAX_TERMS if max_terms is None else max_terms
        projected = 0
        for mono in self.terms:
            if len(mono.beta) > level:
                raise ValueError(
                    f"level {level} below co-word length {len(mono.beta)}")
            projected += self.rank ** (level - len(mono.beta))
            if projected > limit:
                raise ExpansionLimitError(projected, limit)
        acc: dict[Monomial, Scalar] = {}
        for mono, coeff in self.terms.items():
            grow = level - len(mono.beta)
            if grow == 0:
                extensions: Iterable[tuple[int, ...]] = ((),)
            else:
                extensions = itertools.product(range(1, self.rank + 1), repeat=grow)
            for mu in extensions:
                ext = Monomial(mono.alpha + mu, mono.beta + mu)
                if ext in acc:
                    acc[ext] = acc[ext] + coeff
                else:
                    acc[ext] = coeff
        return Element._raw(self.rank,
                            {m: c for m, c in acc.items() if not c.is_zero()})

    # -- equality ------------------------------------------------------------------

    def is_zero(self, max_terms: Optional[int] = None) -> bool:
        """Decide whether self is the zero element of O_n."""
        limit = DEFAULT_MAX_TERMS if max_terms is None else max_terms
        for part in self.gauge_components().values():
            level = max(len(m.beta) for m in part.terms)
            expanded = part.expand_to_level(level, max_terms=limit)
            if expanded.terms:
                return False
        return True

    def equals(self, other: "Element", max_terms: Optional[int] = None) -> bool:
        if not isinstance(other, Element):
            raise TypeError(f"cannot compare Element with {type(other).__name__}")
        self._check_rank(other)
        return (self - other).is_zero(max_terms=max_terms)

    # -- display / misc ---------------------------------------------------------------

    def map_coefficients(self, fn: Callable[[Scalar], Scalar]) -> "Element":
        return Element(self.rank, {m: fn(c) for m, c in self.terms.items()})

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return f"Element(n={self.rank}, 0)"
        bits = []
        for mono, coeff in sorted(self.terms.items(),
                                  key=lambda mc: (mc[0].degree, mc[0].alpha, mc[0].beta)):
            word = "".join(f"S{a}" for a in mono.alpha)
            word += "".join(f"S{b}'" for b in reversed(mono.beta))
            bits.append(f"({coeff})*{word or '1'}")
        return f"Element(n={self.rank}, {' + '.join(bits)})"


def gauge_components(x: Element) -> dict[int, Element]:
    return x.gauge_components()


def is_isometry(x: Element, max_terms: Optional[int] = None) -> bool:
    one = Element.one(x.rank, backend_for(_any_coeff(x)))
    return (x.adjoint() * x).equals(one, max_terms=max_terms)


def is_unitary(x: Element, max_terms: Optional[int] = None) -> bool:
    one = Element.one(x.rank, backend_for(_any_coeff(x)))
    return (x.adjoint() * x).equals(one, max_terms=max_terms) and \
        (x * x.adjoint()).equals(one, max_terms=max_terms)


def is_selfadjoint(x: Element, max_terms: Optional[int] = None) -> bool:
    return x.equals(x.adjoint(), max_terms=max_terms)


def is_projection(x: Element, max_terms: Optional[int] = None) -> bool:
    return x.equals(x.adjoint(), max_terms=max_terms) and \
        x.equals(x * x, max_terms=max_terms)


def _any_coeff(x: Element):
    for coeff in x.terms.values():
        return coeff
    return None
