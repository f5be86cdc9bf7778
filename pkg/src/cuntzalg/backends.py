"""Coefficient backends: exact cyclotomic scalars and a floating cross-check twin.

The exact backend is the source of truth. The numeric backend evaluates the
same constructions in complex floating point (gmpy2.mpc at a configurable
mantissa width) and decides ``is_zero`` against a tolerance; it exists only
to cross-validate the exact verdicts and is never used to establish an
identity.

Creating a ``NumericScalars`` backend raises the thread's gmpy2 context
precision to at least the requested bits (it is never lowered), so plain
arithmetic on its scalars runs at full precision with no per-operation
context switching.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

import gmpy2
import mpmath

from .scalars import CycloScalar, radical, rational_scalar, root_of_unity

__all__ = ["EXACT", "ExactScalars", "NumericScalar", "NumericScalars", "backend_for"]


class ExactScalars:
    """Factory for exact Q(zeta_M) coefficients."""

    name = "exact"

    def rational(self, num: Union[int, Fraction], den: int = 1) -> CycloScalar:
        return rational_scalar(Fraction(num, den))

    def zeta(self, order: int, power: int = 1) -> CycloScalar:
        return root_of_unity(order, power)

    def sqrt_int(self, m: int) -> CycloScalar:
        return radical(m)[1]

    def lift(self, s: CycloScalar) -> CycloScalar:
        return s


EXACT = ExactScalars()


class NumericScalar:
    """A complex coefficient with an is_zero tolerance."""

    __slots__ = ("value", "prec", "tol")

    def __init__(self, value, prec: int, tol: float):
        self.value = value
        self.prec = prec
        self.tol = tol

    def _other(self, other):
        if isinstance(other, NumericScalar):
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return gmpy2.mpq(other)
        return None

    def __add__(self, other):
        val = self._other(other)
        if val is None:
            return NotImplemented
        return NumericScalar(self.value + val, self.prec, self.tol)

    __radd__ = __add__

    def __sub__(self, other):
        val = self._other(other)
        if val is None:
            return NotImplemented
        return NumericScalar(self.value - val, self.prec, self.tol)

    def __rsub__(self, other):
        val = self._other(other)
        if val is None:
            return NotImplemented
        return NumericScalar(val - self.value, self.prec, self.tol)

    def __mul__(self, other):
        val = self._other(other)
        if val is None:
            return NotImplemented
        return NumericScalar(self.value * val, self.prec, self.tol)

    __rmul__ = __mul__

    def __neg__(self):
        return NumericScalar(-self.value, self.prec, self.tol)

    def conjugate(self):
        return NumericScalar(self.value.conjugate(), self.prec, self.tol)

    def is_zero(self) -> bool:
        return abs(self.value) <= self.tol

    def __eq__(self, other):
        val = self._other(other)
        if val is None:
            return NotImplemented
        return abs(self.value - val) <= self.tol

    __hash__ = None

    def numeric(self, precision: int = 53) -> mpmath.mpc:
        value = gmpy2.mpc(self.value)
        with mpmath.workprec(max(precision, self.prec)):
            return mpmath.mpc(mpmath.mpf(str(value.real)), mpmath.mpf(str(value.imag)))

    def __repr__(self):
        return f"NumericScalar({self.value})"

    def __str__(self):
        return str(complex(self.value))


class NumericScalars:
    """Factory for floating coefficients at a given precision and tolerance."""

    name = "numeric"

    def __init__(self, precision: int = 128, tolerance: float = 1e-10):
        if precision < 53:
            raise ValueError("precision must be at least 53 bits")
        self.precision = precision
        self.tolerance = tolerance
        ctx = gmpy2.get_context()
        if ctx.precision < precision:
            ctx.precision = precision

    def _wrap(self, value) -> NumericScalar:
        return NumericScalar(gmpy2.mpc(value), self.precision, self.tolerance)

    def rational(self, num: Union[int, Fraction], den: int = 1) -> NumericScalar:
        return self._wrap(gmpy2.mpfr(gmpy2.mpq(Fraction(num, den))))

    def zeta(self, order: int, power: int = 1) -> NumericScalar:
        return self._wrap(gmpy2.exp(2j * gmpy2.const_pi() * gmpy2.mpq(power, order)))

    def sqrt_int(self, m: int) -> NumericScalar:
        return self._wrap(gmpy2.sqrt(gmpy2.mpfr(m)))

    def lift(self, s) -> NumericScalar:
        if isinstance(s, NumericScalar):
            return s
        # evaluate the coefficient vector at the gmpy2 root of unity
        z = gmpy2.exp(2j * gmpy2.const_pi() / s.order)
        acc = gmpy2.mpc(0)
        power = gmpy2.mpc(1)
        for v in s.nums:
            if v:
                acc += v * power
            power *= z
        return self._wrap(acc / s.den)


def backend_for(coefficient, default=EXACT):
    """Recover the backend a coefficient was built with (exact by default)."""
    if isinstance(coefficient, NumericScalar):
        return NumericScalars(coefficient.prec, coefficient.tol)
    return default
