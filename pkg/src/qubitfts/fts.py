"""Freudenthal triple system over the three-qubit Jordan algebra.

Elements are quadruples ``(alpha, beta, A, B)``.  The triple product is not
written out in components: it is recovered from the fully polarized quartic
form by solving against the symplectic Gram matrix, which keeps it tied to
whatever normalization ``quartic_norm`` uses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence, Union

from gmpy2 import mpq

from . import _linalg
from .jordan import (
    IDENTITY,
    InvalidStructureElement,
    JordanElement,
    ZERO as J_ZERO,
    cross,
    cubic_norm,
    random_element as random_jordan,
    sharp,
    trace_form,
)
from .scalars import ExactComplex, is_zero, magnitude, random_exact

__all__ = [
    "BASIS",
    "FtsElement",
    "Phi",
    "Psi",
    "Tau",
    "Zed",
    "FtsGenerator",
    "apply_generator",
    "apply_word",
    "fts_rank",
    "is_automorphism_witness",
    "quartic_norm",
    "quartic_polarized",
    "random_element",
    "random_generator",
    "random_word",
    "rank_certificates",
    "symplectic_form",
    "triple_product",
    "upsilon",
]


class FtsElement:
    """``x = (alpha, beta, A, B)`` with alpha, beta scalars and A, B Jordan elements."""

    __slots__ = ("alpha", "beta", "A", "B")

    def __init__(self, alpha=0, beta=0, A: JordanElement = J_ZERO, B: JordanElement = J_ZERO):
        self.alpha = alpha if isinstance(alpha, (ExactComplex, complex)) else ExactComplex(alpha)
        self.beta = beta if isinstance(beta, (ExactComplex, complex)) else ExactComplex(beta)
        self.A = A if isinstance(A, JordanElement) else JordanElement(*A)
        self.B = B if isinstance(B, JordanElement) else JordanElement(*B)

    @classmethod
    def from_vector(cls, v: Sequence) -> FtsElement:
        """Inverse of :meth:`to_vector`."""
        return cls(v[0], v[1], JordanElement(v[2], v[3], v[4]), JordanElement(v[5], v[6], v[7]))

    def to_vector(self) -> tuple:
        """Components in the order ``(alpha, beta, A1, A2, A3, B1, B2, B3)``."""
        return (self.alpha, self.beta) + self.A.c + self.B.c

    def __add__(self, o: FtsElement) -> FtsElement:
        return FtsElement(self.alpha + o.alpha, self.beta + o.beta, self.A + o.A, self.B + o.B)

    def __sub__(self, o: FtsElement) -> FtsElement:
        return FtsElement(self.alpha - o.alpha, self.beta - o.beta, self.A - o.A, self.B - o.B)

    def __neg__(self) -> FtsElement:
        return FtsElement(-self.alpha, -self.beta, -self.A, -self.B)

    def scale(self, s) -> FtsElement:
        return FtsElement(s * self.alpha, s * self.beta, self.A.scale(s), self.B.scale(s))

    def __eq__(self, o):
        if not isinstance(o, FtsElement):
            return NotImplemented
        return self.to_vector() == o.to_vector()

    def __hash__(self):
        return hash(self.to_vector())

    def __bool__(self):
        return any(bool(v) for v in self.to_vector())

    def __repr__(self):
        return f"FtsElement({self.alpha!r}, {self.beta!r}, {self.A.c!r}, {self.B.c!r})"

    def max_abs(self) -> float:
        return max(magnitude(v) for v in self.to_vector())


def _unit(i: int) -> FtsElement:
    v = [0] * 8
    v[i] = 1
    return FtsElement.from_vector(v)


BASIS = tuple(_unit(i) for i in range(8))
ZERO = FtsElement()


def symplectic_form(x: FtsElement, y: FtsElement):
    """``{x, y} = alpha delta - beta gamma + Tr(A, D) - Tr(B, C)``."""
    return (x.alpha * y.beta - x.beta * y.alpha
            + trace_form(x.A, y.B) - trace_form(x.B, y.A))


def quartic_norm(x: FtsElement):
    """``q(x) = -2[ab - Tr(A,B)]^2 - 8[a N(A) + b N(B) - Tr(A#, B#)]``."""
    first = x.alpha * x.beta - trace_form(x.A, x.B)
    second = (x.alpha * cubic_norm(x.A) + x.beta * cubic_norm(x.B)
              - trace_form(sharp(x.A), sharp(x.B)))
    return -2 * first * first - 8 * second


_INV_24 = ExactComplex(mpq(1, 24))


def quartic_polarized(x: FtsElement, y: FtsElement, w: FtsElement, z: FtsElement,
                      cache: dict | None = None):
    """Symmetric 4-linear form with ``q(x, x, x, x) = q(x)``.

    Inclusion-exclusion over the 15 non-empty subsets of the arguments,
    divided by 4!.  ``cache`` memoizes ``q`` on subset sums, which pays off
    when arguments repeat or many calls share a point.
    """
    if cache is None:
        cache = {}
    args = (x, y, w, z)
    total = 0
    for size in range(1, 5):
        sign = 1 if (4 - size) % 2 == 0 else -1
        for subset in combinations(args, size):
            s = subset[0]
            for extra in subset[1:]:
                s = s + extra
            val = cache.get(s)
            if val is None:
                val = quartic_norm(s)
                cache[s] = val
            total = total + val if sign > 0 else total - val
    return _INV_24 * total


# Solve {T, z} = r(z) for T: with G[i][j] = {e_i, e_j}, r_j = sum_i T_i G[i][j].
_GRAM = [[symplectic_form(u, v) for v in BASIS] for u in BASIS]
_GRAM_T_INV = _linalg.inverse([list(col) for col in zip(*_GRAM)])


def _solve_dual(rhs: Sequence) -> FtsElement:
    return FtsElement.from_vector(_linalg.mat_vec(_GRAM_T_INV, rhs))


def triple_product(x: FtsElement, y: FtsElement, w: FtsElement,
                   cache: dict | None = None) -> FtsElement:
    """The element ``T`` with ``{T, z} = q(x, y, w, z)`` for every ``z``."""
    if cache is None:
        cache = {}
    rhs = [quartic_polarized(x, y, w, e, cache) for e in BASIS]
    return _solve_dual(rhs)


def upsilon(x: FtsElement, y: FtsElement, cache: dict | None = None) -> FtsElement:
    """``3 T(x, x, y) + {x, y} x``."""
    return triple_product(x, x, y, cache).scale(3) + x.scale(symplectic_form(x, y))


def _vanishes(x: FtsElement, scale: float) -> bool:
    return all(is_zero(v, scale) for v in x.to_vector())


def rank_certificates(x: FtsElement) -> dict:
    """Evaluate every rank condition, without short-circuiting.

    Keys: ``zero``, ``upsilon_vanishes`` (over the basis, enough by
    linearity), ``triple_vanishes`` for T(x,x,x), ``quartic_vanishes``.
    """
    scale = x.max_abs()
    cache: dict = {}
    return {
        "zero": _vanishes(x, scale),
        "upsilon_vanishes": all(_vanishes(upsilon(x, e, cache), scale ** 3) for e in BASIS),
        "triple_vanishes": _vanishes(triple_product(x, x, x, cache), scale ** 3),
        "quartic_vanishes": is_zero(quartic_norm(x), scale ** 4),
    }


def rank_from_certificates(cert: dict) -> int:
    clauses = {
        0: cert["zero"],
        1: not cert["zero"] and cert["upsilon_vanishes"],
        2: not cert["zero"] and not cert["upsilon_vanishes"] and cert["triple_vanishes"],
        3: not cert["triple_vanishes"] and cert["quartic_vanishes"],
        4: not cert["quartic_vanishes"],
    }
    fired = [r for r, ok in clauses.items() if ok]
    if len(fired) != 1:
        raise ArithmeticError(f"rank clauses not a partition: {fired} for {cert}")
    return fired[0]


def fts_rank(x: FtsElement) -> int:
    """FTS rank 0..4 (0 only for the zero element).

    Conditions are tested cheapest first; they are mutually exclusive so the
    order does not affect the answer.
    """
    scale = x.max_abs()
    if _vanishes(x, scale):
        return 0
    if not is_zero(quartic_norm(x), scale ** 4):
        return 4
    cache: dict = {}
    if not _vanishes(triple_product(x, x, x, cache), scale ** 3):
        return 3
    if all(_vanishes(upsilon(x, e, cache), scale ** 3) for e in BASIS):
        return 1
    return 2


# -- Brown generators --------------------------------------------------------

@dataclass(frozen=True)
class Phi:
    C: JordanElement
    kind = "phi"

    def parameters(self) -> list:
        return list(self.C.c)


@dataclass(frozen=True)
class Psi:
    D: JordanElement
    kind = "psi"

    def parameters(self) -> list:
        return list(self.D.c)


@dataclass(frozen=True)
class Tau:
    c1: object
    c2: object
    c3: object
    kind = "tau"

    def __post_init__(self):
        for name in ("c1", "c2", "c3"):
            v = getattr(self, name)
            if not isinstance(v, (ExactComplex, complex)):
                object.__setattr__(self, name, ExactComplex(v))
        if any(is_zero(c) for c in (self.c1, self.c2, self.c3)):
            raise InvalidStructureElement("Tau parameters must be nonzero")

    @property
    def lam(self):
        return self.c1 * self.c2 * self.c3

    def parameters(self) -> list:
        return [self.c1, self.c2, self.c3]


@dataclass(frozen=True)
class Zed:
    kind = "zed"

    def parameters(self) -> list:
        return []


FtsGenerator = Union[Phi, Psi, Tau, Zed]


def apply_generator(g: FtsGenerator, x: FtsElement) -> FtsElement:
    a, b, A, B = x.alpha, x.beta, x.A, x.B
    if isinstance(g, Phi):
        C = g.C
        Cs = sharp(C)
        return FtsElement(a + trace_form(B, C) + trace_form(A, Cs) + b * cubic_norm(C),
                          b,
                          A + C.scale(b),
                          B + cross(A, C) + Cs.scale(b))
    if isinstance(g, Psi):
        D = g.D
        Ds = sharp(D)
        return FtsElement(a,
                          b + trace_form(A, D) + trace_form(B, Ds) + a * cubic_norm(D),
                          A + cross(B, D) + Ds.scale(a),
                          B + D.scale(a))
    if isinstance(g, Tau):
        c = (g.c1, g.c2, g.c3)
        lam = g.lam
        # alpha pairs with N(A) in q, so it must scale inversely to N(tau A)
        return FtsElement(a / lam, lam * b,
                          JordanElement(c[0] * A.c[0], c[1] * A.c[1], c[2] * A.c[2]),
                          JordanElement(B.c[0] / c[0], B.c[1] / c[1], B.c[2] / c[2]))
    if isinstance(g, Zed):
        return FtsElement(-b, a, -B, A)
    raise TypeError(f"not an FTS generator: {g!r}")


def apply_word(word: Iterable[FtsGenerator], x: FtsElement) -> FtsElement:
    """Apply generators left to right (``word[0]`` acts first)."""
    for g in word:
        x = apply_generator(g, x)
    return x


ZED_AS_PHI_PSI = (Phi(-IDENTITY), Psi(IDENTITY), Phi(-IDENTITY))


def random_element(rng: random.Random, **kwargs) -> FtsElement:
    return FtsElement(random_exact(rng, **kwargs), random_exact(rng, **kwargs),
                      random_jordan(rng, **kwargs), random_jordan(rng, **kwargs))


def _nonzero(rng: random.Random, **kwargs):
    while True:
        v = random_exact(rng, **kwargs)
        if v:
            return v


def random_generator(rng: random.Random, reduced: bool = False) -> FtsGenerator:
    kind = rng.randrange(4)
    if kind == 0:
        return Phi(random_jordan(rng, bound=2, max_den=2))
    if kind == 1:
        return Psi(random_jordan(rng, bound=2, max_den=2))
    if kind == 2:
        c1, c2 = _nonzero(rng, bound=3, max_den=2), _nonzero(rng, bound=3, max_den=2)
        c3 = 1 / (c1 * c2) if reduced else _nonzero(rng, bound=3, max_den=2)
        return Tau(c1, c2, c3)
    return Zed()


def random_word(rng: random.Random, max_length: int = 5) -> list[FtsGenerator]:
    return [random_generator(rng) for _ in range(rng.randint(1, max_length))]


def is_automorphism_witness(word: Sequence[FtsGenerator], samples: int = 50,
                            rng: random.Random | None = None) -> bool:
    """Check on random exact pairs that ``word`` preserves both invariant forms."""
    rng = rng or random.Random(0)
    for _ in range(samples):
        x, y = random_element(rng), random_element(rng)
        sx, sy = apply_word(word, x), apply_word(word, y)
        if symplectic_form(sx, sy) != symplectic_form(x, y):
            return False
        if quartic_norm(sx) != quartic_norm(x):
            return False
    return True
