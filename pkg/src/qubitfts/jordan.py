"""The three-qubit cubic Jordan algebra ``C + C + C`` with norm ``A1*A2*A3``.

Two routes are provided for every derived map.  The closed componentwise
formulas (``trace_form``, ``sharp``, ``jordan_product``) are what the rest of
the package uses.  The ``generic_*`` functions rebuild the same maps from the
cubic norm alone, through trilinear polarization and the base point, and
exist so the closed forms can be checked against the general construction.
"""

from __future__ import annotations

import random
from typing import Callable, Iterable

from gmpy2 import mpq

from . import _linalg
from .scalars import ExactComplex, is_zero, magnitude, random_exact

__all__ = [
    "BASIS",
    "IDENTITY",
    "InvalidStructureElement",
    "JordanElement",
    "ZERO",
    "cross",
    "cubic_norm",
    "generic_jordan_product",
    "generic_sharp",
    "generic_trace_form",
    "jordan_product",
    "jordan_rank",
    "random_element",
    "sharp",
    "spur",
    "str_transform",
    "trace_form",
    "trace_unary",
    "trilinear_norm",
]

_SIXTH = ExactComplex(mpq(1, 6))
_HALF = ExactComplex(mpq(1, 2))


class InvalidStructureElement(ValueError):
    """A structure-group scaling with a zero parameter."""


class JordanElement:
    """Element ``(A1, A2, A3)`` of the algebra."""

    __slots__ = ("c",)

    def __init__(self, a1=0, a2=0, a3=0):
        self.c = (_lift(a1), _lift(a2), _lift(a3))

    @classmethod
    def of(cls, components: Iterable) -> JordanElement:
        return cls(*components)

    def __getitem__(self, i):
        return self.c[i]

    def __iter__(self):
        return iter(self.c)

    def __len__(self):
        return 3

    def __add__(self, other: JordanElement) -> JordanElement:
        a, b = self.c, other.c
        return JordanElement(a[0] + b[0], a[1] + b[1], a[2] + b[2])

    def __sub__(self, other: JordanElement) -> JordanElement:
        a, b = self.c, other.c
        return JordanElement(a[0] - b[0], a[1] - b[1], a[2] - b[2])

    def __neg__(self) -> JordanElement:
        a = self.c
        return JordanElement(-a[0], -a[1], -a[2])

    def scale(self, s) -> JordanElement:
        a = self.c
        return JordanElement(s * a[0], s * a[1], s * a[2])

    def __mul__(self, s) -> JordanElement:
        if isinstance(s, JordanElement):
            return NotImplemented
        return self.scale(s)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, JordanElement):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(bool(x) for x in self.c)

    def __repr__(self):
        return f"JordanElement{self.c!r}"

    def max_abs(self) -> float:
        return max(magnitude(x) for x in self.c)


def _lift(x):
    if isinstance(x, (ExactComplex, complex)):
        return x
    if isinstance(x, float):
        return complex(x)
    return ExactComplex(x)


ZERO = JordanElement(0, 0, 0)
IDENTITY = JordanElement(1, 1, 1)
BASIS = (JordanElement(1, 0, 0), JordanElement(0, 1, 0), JordanElement(0, 0, 1))


def cubic_norm(a: JordanElement):
    """``N(A) = A1 A2 A3``."""
    return a.c[0] * a.c[1] * a.c[2]


def trilinear_norm(x: JordanElement, y: JordanElement, z: JordanElement,
                   norm: Callable = cubic_norm):
    """Full symmetric polarization of ``norm``, normalized so N(X,X,X) = N(X)."""
    total = (norm(x + y + z) - norm(x + y) - norm(x + z) - norm(y + z)
             + norm(x) + norm(y) + norm(z))
    return _SIXTH * total


def trace_unary(x: JordanElement, norm: Callable = cubic_norm,
                base: JordanElement = IDENTITY):
    """``Tr(X) = 3 N(c, c, X)``."""
    return 3 * trilinear_norm(base, base, x, norm)


def spur(x: JordanElement, y: JordanElement, norm: Callable = cubic_norm,
         base: JordanElement = IDENTITY):
    """``S(X, Y) = 6 N(X, Y, c)``."""
    return 6 * trilinear_norm(x, y, base, norm)


def trace_form(a: JordanElement, b: JordanElement):
    """``Tr(A, B) = A1 B1 + A2 B2 + A3 B3``."""
    return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2]


def generic_trace_form(x: JordanElement, y: JordanElement, norm: Callable = cubic_norm,
                       base: JordanElement = IDENTITY):
    return (trace_unary(x, norm, base) * trace_unary(y, norm, base)
            - spur(x, y, norm, base))


def sharp(a: JordanElement) -> JordanElement:
    """Quadratic adjoint ``(A2 A3, A1 A3, A1 A2)``."""
    a1, a2, a3 = a.c
    return JordanElement(a2 * a3, a1 * a3, a1 * a2)


def generic_sharp(x: JordanElement, norm: Callable = cubic_norm,
                  base: JordanElement = IDENTITY,
                  basis: tuple[JordanElement, ...] = BASIS) -> JordanElement:
    """Solve ``Tr(X#, Y) = 3 N(X, X, Y)`` for X# through the trace-form Gram matrix."""
    gram = [[generic_trace_form(u, v, norm, base) for v in basis] for u in basis]
    rhs = [3 * trilinear_norm(x, x, e, norm) for e in basis]
    # Tr(X#, e_j) = sum_i coef_i Tr(e_i, e_j): solve gram^T coef = rhs
    gram_t = [list(col) for col in zip(*gram)]
    coef = _linalg.mat_vec(_linalg.inverse(gram_t), rhs)
    out = ZERO
    for k, e in zip(coef, basis):
        out = out + e.scale(k)
    return out


def cross(a: JordanElement, b: JordanElement) -> JordanElement:
    """Linearized adjoint ``(A+B)# - A# - B#``."""
    return sharp(a + b) - sharp(a) - sharp(b)


def jordan_product(a: JordanElement, b: JordanElement) -> JordanElement:
    """Componentwise product."""
    x, y = a.c, b.c
    return JordanElement(x[0] * y[0], x[1] * y[1], x[2] * y[2])


def generic_jordan_product(x: JordanElement, y: JordanElement,
                           norm: Callable = cubic_norm,
                           base: JordanElement = IDENTITY) -> JordanElement:
    """``1/2 (X x Y + Tr(X) Y + Tr(Y) X - S(X, Y) 1)`` with every piece built from ``norm``."""
    def gsharp(v):
        return generic_sharp(v, norm, base)

    x_cross_y = gsharp(x + y) - gsharp(x) - gsharp(y)
    total = (x_cross_y + y.scale(trace_unary(x, norm, base))
             + x.scale(trace_unary(y, norm, base))
             - base.scale(spur(x, y, norm, base)))
    return total.scale(_HALF)


def jordan_rank(a: JordanElement) -> int:
    """Rank 0..3; rank 0 is reserved for the zero element."""
    scale = a.max_abs()
    if all(is_zero(x, scale) for x in a.c):
        return 0
    if all(is_zero(x, scale ** 2) for x in sharp(a).c):
        return 1
    if is_zero(cubic_norm(a), scale ** 3):
        return 2
    return 3


def str_transform(c1, c2, c3):
    """Diagonal structure-group element ``A -> (c1 A1, c2 A2, c3 A3)``.

    Returns a callable mapping ``A`` to ``(sigma A, lam)`` with ``lam = c1 c2 c3``,
    so that ``N(sigma A) = lam * N(A)``.  The element lies in the reduced
    structure group exactly when ``lam == 1``.
    """
    cs = (_lift(c1), _lift(c2), _lift(c3))
    if any(is_zero(c) for c in cs):
        raise InvalidStructureElement(f"structure parameters must be nonzero, got {cs}")
    lam = cs[0] * cs[1] * cs[2]

    def apply(a: JordanElement):
        return JordanElement(cs[0] * a.c[0], cs[1] * a.c[1], cs[2] * a.c[2]), lam

    return apply


def random_element(rng: random.Random, **kwargs) -> JordanElement:
    return JordanElement(random_exact(rng, **kwargs), random_exact(rng, **kwargs),
                         random_exact(rng, **kwargs))
