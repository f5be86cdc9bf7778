"""Exact coefficient arithmetic in cyclotomic fields Q(zeta_M).

A scalar is the unique residue of a rational polynomial in zeta_M modulo
the M-th cyclotomic polynomial, stored as an integer numerator vector of
length phi(M) over a single positive denominator. Because the representation
is canonical, ``is_zero`` decides equality with no tolerance, in both
directions.

Square roots of integers are folded into the field: sqrt(2) enters through
zeta_8 + zeta_8^-1 and sqrt(p) for odd primes through the quadratic Gauss
sum, so all coefficients needed here (phases e^{2*pi*i*k/n} and the 1/sqrt(n)
normalisations) live in a single Q(zeta_M) with no zero divisors.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence, Union

import mpmath

__all__ = [
    "CycloScalar",
    "cyclotomic_polynomial",
    "euler_phi",
    "radical",
    "rational_scalar",
    "root_of_unity",
]

RationalLike = Union[int, Fraction]


# ---------------------------------------------------------------------------
# dense integer polynomials, constant term first


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return tuple(out)


def _poly_div_exact(num: Sequence[int], den: tuple[int, ...]) -> tuple[int, ...]:
    """Divide by a monic divisor, requiring the remainder to vanish."""
    work = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * (len(work) - dd)
    for i in range(len(work) - 1, dd - 1, -1):
        c = work[i]
        if c:
            quot[i - dd] = c
            for j, dj in enumerate(den):
                work[i - dd + j] -= c * dj
    if any(work):
        raise ArithmeticError("nonzero remainder in exact polynomial division")
    return tuple(quot)


def _divisors(m: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(order: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_order, constant term first.

    Computed by exact division of x^order - 1 by the product of Phi_d over
    the proper divisors d of order. Cached; the cache only ever grows.
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    if order == 1:
        return (-1, 1)
    num = [-1] + [0] * (order - 1) + [1]
    den: tuple[int, ...] = (1,)
    for d in _divisors(order)[:-1]:
        den = _poly_mul(den, cyclotomic_polynomial(d))
    return _poly_div_exact(num, den)


def euler_phi(order: int) -> int:
    return len(cyclotomic_polynomial(order)) - 1


@lru_cache(maxsize=None)
def _power_rows(order: int) -> tuple[tuple[int, ...], ...]:
    """Rows of x^j reduced modulo Phi_order, for j = 0 .. max(order-1, 2*phi-2).

    Covers every exponent produced by order lifting (j < order) and by
    products of reduced scalars (j <= 2*phi - 2).
    """
    phi = euler_phi(order)
    poly = cyclotomic_polynomial(order)
    top = max(order - 1, 2 * phi - 2)
    rows: list[tuple[int, ...]] = []
    for j in range(min(phi, top + 1)):
        row = [0] * phi
        row[j] = 1
        rows.append(tuple(row))
    for _ in range(phi, top + 1):
        prev = rows[-1]
        carry = prev[-1]
        shifted = [0] + list(prev[:-1])
        if carry:
            for t in range(phi):
                shifted[t] -= carry * poly[t]
        rows.append(tuple(shifted))
    return tuple(rows)


def _reduce_exponents(order: int, vec: Sequence[int]) -> list[int]:
    """Reduce an integer exponent vector modulo Phi_order to length phi."""
    rows = _power_rows(order)
    phi = euler_phi(order)
    acc = [0] * phi
    for e, c in enumerate(vec):
        if c:
            row = rows[e] if e < len(rows) else rows[e % order]
            for t, rt in enumerate(row):
                if rt:
                    acc[t] += c * rt
    return acc


# ---------------------------------------------------------------------------
# scalars


class CycloScalar:
    """An element of Q(zeta_M), stored reduced modulo Phi_M.

    Instances are immutable; all operations return new scalars. Mixed-order
    arithmetic lifts both operands to Q(zeta_lcm) by exponent scaling first.
    Roots of unity invert by exponent negation and rationals divide as usual;
    no general multiplicative inverse is provided.
    """

    __slots__ = ("order", "den", "nums")

    def __init__(self, order: int, coeffs: Iterable[RationalLike] = (),
                 *, _reduced: bool = False):
        if order < 1:
            raise ValueError(f"order must be >= 1, got {order}")
        fracs = [Fraction(c) for c in coeffs]
        den = reduce(math.lcm, (f.denominator for f in fracs), 1)
        vec = [int(f * den) for f in fracs]
        if _reduced:
            if len(vec) != euler_phi(order):
                raise ValueError(f"expected {euler_phi(order)} coefficients")
            nums = vec
        else:
            nums = _reduce_exponents(order, vec)
        g = den
        for v in nums:
            g = math.gcd(g, v)
            if g == 1:
                break
        if g > 1:
            den //= g
            nums = [v // g for v in nums]
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "nums", tuple(nums))

    @classmethod
    def _make(cls, order: int, den: int, nums: Sequence[int]) -> "CycloScalar":
        """Internal fast path; ``nums`` must already have length phi(order)."""
        if den != 1:
            g = den
            for v in nums:
                g = math.gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                den //= g
                nums = [v // g for v in nums]
        obj = object.__new__(cls)
        object.__setattr__(obj, "order", order)
        object.__setattr__(obj, "den", den)
        object.__setattr__(obj, "nums", tuple(nums))
        return obj

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("CycloScalar is immutable")

    # -- structure ----------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Coefficients of 1, zeta, ..., zeta^{phi(M)-1} as reduced fractions."""
        return tuple(Fraction(v, self.den) for v in self.nums)

    def lift(self, new_order: int) -> "CycloScalar":
        """Re-express in Q(zeta_new_order); new_order must be a multiple of order."""
        if new_order == self.order:
            return self
        if new_order % self.order:
            raise ValueError(f"{new_order} is not a multiple of {self.order}")
        r = new_order // self.order
        vec = [0] * ((len(self.nums) - 1) * r + 1)
        for e, c in enumerate(self.nums):
            vec[e * r] = c
        return CycloScalar._make(new_order, self.den, _reduce_exponents(new_order, vec))

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("scalar is not rational")
        return Fraction(self.nums[0], self.den)

    # -- arithmetic ----------------------------------------------------------

    def _common(self, other: "CycloScalar") -> tuple["CycloScalar", "CycloScalar"]:
        if self.order == other.order:
            return self, other
        m = math.lcm(self.order, other.order)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        den = math.lcm(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        return CycloScalar._make(
            a.order, den, [x * fa + y * fb for x, y in zip(a.nums, b.nums)])

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return CycloScalar._make(self.order, self.den, [-v for v in self.nums])

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloScalar._make(self.order, self.den,
                                     [v * other for v in self.nums])
        if isinstance(other, Fraction):
            return CycloScalar._make(self.order, self.den * other.denominator,
                                     [v * other.numerator for v in self.nums])
        if not isinstance(other, CycloScalar):
            return NotImplemented
        # rational factors scale without convolution or lifting
        if not any(other.nums[1:]):
            return CycloScalar._make(self.order, self.den * other.den,
                                     [v * other.nums[0] for v in self.nums])
        if not any(self.nums[1:]):
            return CycloScalar._make(other.order, self.den * other.den,
                                     [v * self.nums[0] for v in other.nums])
        a, b = self._common(other)
        phi = len(a.nums)
        conv = [0] * (2 * phi - 1)
        for i, ai in enumerate(a.nums):
            if ai:
                for j, bj in enumerate(b.nums):
                    if bj:
                        conv[i + j] += ai * bj
        return CycloScalar._make(a.order, a.den * b.den,
                                 _reduce_exponents(a.order, conv))

    __rmul__ = __mul__

    def conjugate(self) -> "CycloScalar":
        """Complex conjugation: zeta_M -> zeta_M^(M-1), re-reduced."""
        vec = [0] * self.order
        for e, c in enumerate(self.nums):
            vec[(-e) % self.order] += c
        return CycloScalar._make(self.order, self.den,
                                 _reduce_exponents(self.order, vec))

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return a.den == b.den and a.nums == b.nums

    __hash__ = None  # representations at different orders would collide

    # -- numeric embedding ----------------------------------------------------

    def numeric(self, precision: int = 53) -> mpmath.mpc:
        """Evaluate at exp(2*pi*i/M) with at least ``precision`` bits."""
        if precision < 53:
            raise ValueError("precision must be at least 53 bits")
        with mpmath.workprec(precision):
            z = mpmath.exp(2j * mpmath.pi / self.order)
            acc = mpmath.mpc(0)
            power = mpmath.mpc(1)
            for v in self.nums:
                if v:
                    acc += mpmath.mpf(v) * power
                power *= z
            return acc / self.den

    # -- serialization ---------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "M": self.order,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "CycloScalar":
        order = int(obj["M"])
        coeffs = [Fraction(int(num), int(den)) for num, den in obj["coeffs"]]
        return cls(order, coeffs, _reduced=True)

    # -- display ---------------------------------------------------------------

    def __repr__(self):
        return f"CycloScalar(M={self.order}, [{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            if e == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"z{self.order}^{e}")
            else:
                parts.append(f"{c}*z{self.order}^{e}")
        return " + ".join(parts)


def _coerce(value):
    if isinstance(value, CycloScalar):
        return value
    if isinstance(value, int):
        return CycloScalar._make(1, 1, (value,))
    if isinstance(value, Fraction):
        return CycloScalar._make(1, value.denominator, (value.numerator,))
    return NotImplemented


def rational_scalar(value: RationalLike) -> CycloScalar:
    """The rational ``value`` as a scalar of order 1."""
    value = Fraction(value)
    return CycloScalar._make(1, value.denominator, (value.numerator,))


def root_of_unity(order: int, power: int = 1) -> CycloScalar:
    """zeta_order^power, reduced modulo Phi_order."""
    vec = [0] * order
    vec[power % order] = 1
    return CycloScalar._make(order, 1, _reduce_exponents(order, vec))


# ---------------------------------------------------------------------------
# square roots of integers


def _factorize(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def _legendre(a: int, p: int) -> int:
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def radical(m: int) -> tuple[int, CycloScalar]:
    """sqrt(m) as an exact scalar, together with the field order used.

    Writes m = s^2 * f with f squarefree. The squarefree part is assembled
    multiplicatively: sqrt(2) = zeta_8 + zeta_8^-1 and, for an odd prime p,
    the Gauss sum g_p = sum_a (a|p) zeta_p^a equals sqrt(p) when p = 1 (mod 4)
    and i*sqrt(p) when p = 3 (mod 4); the accumulated powers of i cancel into
    a single correction factor. The field order is f itself when f = 1 (mod 4)
    and 4f otherwise, which always contains the needed eighth/fourth roots.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    factors = _factorize(m)
    s = 1
    f = 1
    for p, e in factors.items():
        s *= p ** (e // 2)
        if e % 2:
            f *= p
    if f == 1:
        return 1, rational_scalar(s)
    order = f if f % 4 == 1 else 4 * f
    value = rational_scalar(s).lift(order)
    count_3mod4 = 0
    for p in sorted(p for p, e in factors.items() if e % 2):
        if p == 2:
            step = order // 8
            value = value * (root_of_unity(order, step) + root_of_unity(order, -step))
        else:
            step = order // p
            gauss = CycloScalar(order)
            for a in range(1, p):
                gauss = gauss + _legendre(a, p) * root_of_unity(order, a * step)
            value = value * gauss
            if p % 4 == 3:
                count_3mod4 += 1
    # the product of Gauss sums carries i^count; divide it back out
    count_3mod4 %= 4
    if count_3mod4 == 1:
        value = value * root_of_unity(order, -(order // 4))
    elif count_3mod4 == 2:
        value = -value
    elif count_3mod4 == 3:
        value = value * root_of_unity(order, order // 4)
    return order, value
