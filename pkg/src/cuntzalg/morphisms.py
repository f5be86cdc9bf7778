"""Endomorphisms of O_n and the machinery of the order-n torus action.

An endomorphism is given by the images of the generators (the unitary
correspondence u <-> lambda_u with lambda_u(S_i) = u S_i and
u = sum_i lambda(S_i) S_i^*). The cyclic rotation lambda_C, the exchange
lambda_E and the rank-2 flip-flop are provided by name.

The averaging map F = (1/n) sum_k lambda_C^{k-1} projects onto the fixed
points of lambda_C, and x = sum_k F(x v^k) v^{-k} splits any element into
spectral components, where v = sum_k zeta_n^k S_k S_k^* satisfies
lambda_C(v) = zeta_n^{-1} v. Component k is an eigenvector of lambda_C for
the eigenvalue zeta_n^k; that labelling is pinned by the decomposition
identity itself and is verified, not assumed, in the suites.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .algebra import Element, is_unitary
from .backends import EXACT, backend_for

__all__ = [
    "Endo",
    "cyclic_endo",
    "endo_from_unitary",
    "exchange_endo",
    "expect_cyclic",
    "flipflop_endo",
    "is_fixed",
    "named_endo",
    "phase_unitary",
    "spectral_component",
    "spectral_decompose",
    "unitary_from_endo",
]


class Endo:
    """An endomorphism of O_n given by generator images.

    Construction checks that the images satisfy the Cuntz relations
    (images[i]^* images[j] = delta_ij and sum_i images[i] images[i]^* = 1)
    unless ``validate=False`` is passed; all verification suites construct
    with validation on.
    """

    __slots__ = ("rank", "images")

    def __init__(self, images: tuple[Element, ...], *, validate: bool = True):
        rank = len(images)
        if rank < 2:
            raise ValueError(f"rank must be >= 2, got {rank}")
        for image in images:
            if image.rank != rank:
                raise ValueError(f"image rank {image.rank} differs from {rank}")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "images", tuple(images))
        if validate:
            self._validate()

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Endo is immutable")

    def _validate(self):
        n = self.rank
        backend = backend_for(_first_coeff(self.images[0]))
        one = Element.one(n, backend)
        total = Element.zero(n)
        for i, si in enumerate(self.images):
            for j, sj in enumerate(self.images):
                prod = si.adjoint() * sj
                target = one if i == j else Element.zero(n)
                if not prod.equals(target):
                    raise ValueError(
                        f"images violate S_{i + 1}^* S_{j + 1} = "
                        f"{'1' if i == j else '0'}")
            total = total + si * si.adjoint()
        if not total.equals(one):
            raise ValueError("images violate sum_i S_i S_i^* = 1")

    # -- application -----------------------------------------------------------

    def __call__(self, x: Element) -> Element:
        """Apply the multiplicative, *-preserving, unital extension to x."""
        if x.rank != self.rank:
            raise ValueError(f"rank mismatch: {x.rank} vs {self.rank}")
        out = Element.zero(self.rank)
        for mono, coeff in x.terms.items():
            term = None
            for a in mono.alpha:
                factor = self.images[a - 1]
                term = factor if term is None else term * factor
            if mono.beta:
                star = None
                for b in mono.beta:
                    factor = self.images[b - 1]
                    star = factor if star is None else star * factor
                star = star.adjoint()
                term = star if term is None else term * star
            if term is None:
                term = Element.one(self.rank, backend_for(coeff))
            out = out + term.scale(coeff)
        return out

    def compose(self, other: "Endo", *, validate: bool = False) -> "Endo":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        if other.rank != self.rank:
            raise ValueError(f"rank mismatch: {other.rank} vs {self.rank}")
        return Endo(tuple(self(img) for img in other.images), validate=validate)

    def power(self, exponent: int) -> "Endo":
        if exponent < 0:
            raise ValueError("negative powers are not defined for endomorphisms")
        acc = identity_endo(self.rank, backend_for(_first_coeff(self.images[0])))
        for _ in range(exponent):
            acc = self.compose(acc)
        return acc

    def equals(self, other: "Endo") -> bool:
        if other.rank != self.rank:
            return False
        return all(a.equals(b) for a, b in zip(self.images, other.images))

    def unitary(self) -> Element:
        """The unitary sum_i images[i] S_i^* implementing this endomorphism."""
        acc = Element.zero(self.rank)
        for i, image in enumerate(self.images):
            acc = acc + image * Element.generator(self.rank, i + 1).adjoint()
        return acc

    def __repr__(self):
        return f"Endo(n={self.rank})"


def _first_coeff(x: Element):
    for coeff in x.terms.values():
        return coeff
    return None


def identity_endo(n: int, backend=EXACT) -> Endo:
    return Endo(tuple(Element.generator(n, i + 1, backend) for i in range(n)),
                validate=False)


def cyclic_endo(n: int, backend=EXACT) -> Endo:
    """S_i -> S_{i+1 mod n}."""
    return Endo(tuple(Element.generator(n, i + 2, backend) for i in range(n)),
                validate=False)


def exchange_endo(n: int, backend=EXACT) -> Endo:
    """S_i -> S_{n-i+1}."""
    return Endo(tuple(Element.generator(n, n - i, backend) for i in range(n)),
                validate=False)


def flipflop_endo(backend=EXACT) -> Endo:
    """The rank-2 involution switching S_1 and S_2."""
    return cyclic_endo(2, backend)


def named_endo(kind: str, n: int, backend=EXACT) -> Endo:
    if n < 2:
        raise ValueError(f"rank must be >= 2, got {n}")
    if kind == "cyclic":
        return cyclic_endo(n, backend)
    if kind == "exchange":
        return exchange_endo(n, backend)
    if kind == "flipflop":
        if n != 2:
            raise ValueError("the flip-flop lives on rank 2")
        return flipflop_endo(backend)
    raise ValueError(f"unknown endomorphism kind {kind!r}")


def endo_from_unitary(u: Element, *, validate: bool = True) -> Endo:
    """lambda_u with lambda_u(S_i) = u S_i; requires u unitary."""
    if not is_unitary(u):
        raise ValueError("endomorphisms correspond to unitaries; input is not unitary")
    images = tuple(u * Element.generator(u.rank, i + 1, backend_for(_first_coeff(u)))
                   for i in range(u.rank))
    return Endo(images, validate=validate)


def unitary_from_endo(e: Endo) -> Element:
    return e.unitary()


def phase_unitary(n: int, backend=EXACT) -> Element:
    """v = sum_{k=1..n} zeta_n^k S_k S_k^*, the eigenvector unitary of the action."""
    acc = Element.zero(n)
    for k in range(1, n + 1):
        proj = Element.word(n, (k,), (k,), backend.zeta(n, k))
        acc = acc + proj
    return acc


def expect_cyclic(x: Element) -> Element:
    """F(x) = (1/n) sum_{k=1..n} lambda_C^{k-1}(x); projects onto the fixed points."""
    n = x.rank
    lam = cyclic_endo(n, backend_for(_first_coeff(x)))
    acc = x
    img = x
    for _ in range(n - 1):
        img = lam(img)
        acc = acc + img
    return acc.scale(Fraction(1, n))


def spectral_component(x: Element, k: int, v: Optional[Element] = None) -> Element:
    """Component k of x: F(x v^k) v^{-k}, an eigenvector for zeta_n^k."""
    n = x.rank
    if not 0 <= k <= n - 1:
        raise ValueError(f"component index {k} out of range 0..{n - 1}")
    if v is None:
        v = phase_unitary(n, backend_for(_first_coeff(x)))
    vk = Element.one(n, backend_for(_first_coeff(v)))
    for _ in range(k):
        vk = vk * v
    return expect_cyclic(x * vk) * vk.adjoint()


def spectral_decompose(x: Element) -> list[Element]:
    """All n spectral components; they sum to x exactly."""
    n = x.rank
    v = phase_unitary(n, backend_for(_first_coeff(x)))
    return [spectral_component(x, k, v) for k in range(n)]


def is_fixed(e: Endo, x: Element, max_terms: Optional[int] = None) -> bool:
    return e(x).equals(x, max_terms=max_terms)
