"""Complex scalars with an exact (Gaussian rational) and an approximate backend.

The exact backend is :class:`ExactComplex`, a pair of arbitrary precision
rationals.  The approximate backend is the builtin :class:`complex`.  All of
the algebra in this package is written against ordinary arithmetic operators,
so either backend can be fed through it; only zero tests differ.
"""

from __future__ import annotations

import random
from fractions import Fraction
from numbers import Rational
from typing import Union

from gmpy2 import mpq

__all__ = [
    "EPS_ZERO",
    "ExactComplex",
    "Scalar",
    "abs_squared",
    "conjugate",
    "exact",
    "format_rational",
    "is_exact",
    "is_zero",
    "magnitude",
    "parse_rational",
    "random_exact",
]

EPS_ZERO = 1e-10

_RationalLike = Union[int, Fraction, "mpq"]


def _to_mpq(value) -> mpq:
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int) or type(value).__name__ == "mpq":
        return mpq(value)
    if isinstance(value, Rational):
        # covers Fraction and foreign rationals that mpq() does not know
        return mpq(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def parse_rational(text: str) -> mpq:
    """Parse ``"p/q"`` or ``"p"`` into a rational; decimals are rejected."""
    body = text.strip()
    num, sep, den = body.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return mpq(p, q)


def format_rational(value) -> str:
    """Render a rational as ``"p/q"``; integers keep an explicit ``/1``."""
    value = mpq(value)
    return f"{value.numerator}/{value.denominator}"


class ExactComplex:
    """A complex number with rational real and imaginary parts.

    Instances are immutable and hashable.  Arithmetic with ints, Fractions and
    other ``ExactComplex`` values stays exact; mixing in a float or complex
    drops to the approximate backend and returns a builtin ``complex``.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: _RationalLike | str = 0, im: _RationalLike | str = 0):
        object.__setattr__(self, "re", _to_mpq(re))
        object.__setattr__(self, "im", _to_mpq(im))

    @classmethod
    def _make(cls, re: mpq, im: mpq) -> ExactComplex:
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("ExactComplex is immutable")

    def __reduce__(self):
        return (ExactComplex, (Fraction(int(self.re.numerator), int(self.re.denominator)),
                               Fraction(int(self.im.numerator), int(self.im.denominator))))

    # -- coercion ---------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, ExactComplex):
            return other
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, (int, Rational)) or type(other).__name__ == "mpq":
            return ExactComplex._make(_to_mpq(other), mpq(0))
        if isinstance(other, (float, complex)):
            return complex(other)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if isinstance(o, complex):
            return complex(self) + o
        return ExactComplex._make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if isinstance(o, complex):
            return complex(self) - o
        return ExactComplex._make(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if isinstance(o, complex):
            return o - complex(self)
        return ExactComplex._make(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if isinstance(o, complex):
            return complex(self) * o
        if not o.im:
            return ExactComplex._make(self.re * o.re, self.im * o.re)
        if not self.im:
            return ExactComplex._make(self.re * o.re, self.re * o.im)
        return ExactComplex._make(self.re * o.re - self.im * o.im,
                                  self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if isinstance(o, complex):
            return complex(self) / o
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if isinstance(o, complex):
            return o / complex(self)
        return o * self.reciprocal()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result = ExactComplex._make(mpq(1), mpq(0))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __neg__(self):
        return ExactComplex._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def reciprocal(self) -> ExactComplex:
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("division by exact zero")
        return ExactComplex._make(self.re / norm, -self.im / norm)

    def conjugate(self) -> ExactComplex:
        return ExactComplex._make(self.re, -self.im)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if isinstance(o, complex):
            return complex(self) == o
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    @property
    def real(self) -> mpq:
        return self.re

    @property
    def imag(self) -> mpq:
        return self.im

    def __repr__(self):
        if not self.im:
            return f"ExactComplex({format_rational(self.re)!r})"
        return f"ExactComplex({format_rational(self.re)!r}, {format_rational(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


Scalar = Union[ExactComplex, complex]


def exact(re: _RationalLike | str = 0, im: _RationalLike | str = 0) -> ExactComplex:
    """Shorthand constructor for exact scalars."""
    return ExactComplex(re, im)


def is_exact(s) -> bool:
    return isinstance(s, (ExactComplex, int, Rational)) or type(s).__name__ == "mpq"


def magnitude(s) -> float:
    """Absolute value as a float, for scale estimates."""
    return abs(complex(s))


def is_zero(s, context_scale: float = 1.0, eps: float = EPS_ZERO) -> bool:
    """Zero test shared by every rank decision.

    Exact scalars are compared to zero exactly.  Approximate scalars are zero
    when ``|s| <= eps * max(1, context_scale)``.
    """
    if is_exact(s):
        return not s
    return abs(complex(s)) <= eps * max(1.0, float(context_scale))


def conjugate(s):
    if isinstance(s, ExactComplex):
        return s.conjugate()
    if is_exact(s):
        return s
    return complex(s).conjugate()


def abs_squared(s):
    """``s * conj(s)`` with the imaginary part dropped (it is zero)."""
    if isinstance(s, ExactComplex):
        return ExactComplex._make(s.re * s.re + s.im * s.im, mpq(0))
    if is_exact(s):
        v = mpq(s)
        return ExactComplex._make(v * v, mpq(0))
    z = complex(s)
    return complex(z.real * z.real + z.imag * z.imag, 0.0)


def random_exact(rng: random.Random, bound: int = 4, max_den: int = 3,
                 gaussian: bool = True) -> ExactComplex:
    """Small random Gaussian rational, handy for randomized identity checks."""
    def part():
        return mpq(rng.randint(-bound, bound), rng.randint(1, max_den))

    if gaussian:
        return ExactComplex._make(part(), part())
    return ExactComplex._make(part(), mpq(0))
