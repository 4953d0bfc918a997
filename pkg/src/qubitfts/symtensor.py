"""n-qubit states as permutation-closed blocks of symmetric tensors.

A state is stored as one value per subset ``S`` of ``{1..n}``: the lower
rank-``|S|`` tensor ``A_S`` equals the amplitude whose 1-bits sit exactly at
the positions in ``S`` (qubits numbered from the left).  Diagonal entries of
the tensors vanish, so subsets carry all the data and the ``|epsilon|``
dualization is just complementation of the subset.

Conventions follow the usual practice of dropping combinatorial factors in
the transformations.  The degree-two invariant keeps its ``1/k!`` factors and
contracts over ordered index tuples, which fixes two constants:

* ``n = 2``: ``(A, A) = 2 det a``
* ``n = 3``: ``(A, B) = -{x, y}`` on the triple-system images.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, permutations
from math import factorial
from typing import Iterable, Sequence, Union

from gmpy2 import mpq

from .scalars import ExactComplex, is_zero, magnitude, random_exact
from .states import InvalidStateError, QubitState

__all__ = [
    "NTransform",
    "PhiN",
    "PsiN",
    "SymTensorState",
    "TauN",
    "ZedN",
    "apply_ntransform",
    "apply_ntransforms",
    "bilinear_invariant",
    "dualize",
    "from_amplitudes",
    "local_matrices",
    "TwoQubitReduction",
    "front_normalize",
    "random_ntransform",
    "to_amplitudes",
    "to_fts_generator",
    "two_qubit_reduce",
]

Subset = tuple  # sorted 1-based qubit positions


def _lift(x):
    if isinstance(x, (ExactComplex, complex)):
        return x
    if isinstance(x, float):
        return complex(x)
    return ExactComplex(x)


def _subsets(n: int, p: int) -> list[Subset]:
    return list(combinations(range(1, n + 1), p))


def _complement(s: Subset, n: int) -> Subset:
    present = set(s)
    return tuple(i for i in range(1, n + 1) if i not in present)


class SymTensorState:
    """Blocks ``A_[0] .. A_[n]`` keyed by index subset."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values: dict[Subset, object]):
        self.n = n
        full = {}
        for p in range(n + 1):
            for s in _subsets(n, p):
                full[s] = _lift(values.get(s, 0))
        extra = set(values) - set(full)
        if extra:
            raise InvalidStateError(f"subsets outside 1..{n} or unsorted: {sorted(extra)}")
        self.values = full

    def block(self, p: int) -> dict[Subset, object]:
        """Lower block ``A_[p]``."""
        return {s: v for s, v in self.values.items() if len(s) == p}

    def __getitem__(self, s: Iterable[int]):
        return self.values[tuple(sorted(s))]

    def component_count(self) -> int:
        return len(self.values)

    def max_abs(self) -> float:
        return max(magnitude(v) for v in self.values.values())

    def is_null(self) -> bool:
        scale = self.max_abs()
        return all(is_zero(v, scale) for v in self.values.values())

    def __eq__(self, other):
        if not isinstance(other, SymTensorState):
            return NotImplemented
        return self.n == other.n and self.values == other.values

    def __repr__(self):
        body = ", ".join(f"{s or '0'}: {v}" for s, v in self.values.items() if v != 0)
        return f"SymTensorState(n={self.n}; {body})"


def from_amplitudes(s: QubitState) -> SymTensorState:
    values = {}
    for key, v in s.items():
        values[tuple(i + 1 for i, b in enumerate(key) if b == "1")] = v
    return SymTensorState(s.n, values)


def to_amplitudes(t: SymTensorState) -> QubitState:
    amps = {}
    for subset, v in t.values.items():
        key = ["0"] * t.n
        for i in subset:
            key[i - 1] = "1"
        amps["".join(key)] = v
    return QubitState(t.n, amps)


def dualize(t: SymTensorState, p: int) -> dict[Subset, object]:
    """Upper block ``A^[n-p]`` obtained from lower ``A_[p]``.

    With ``d = |epsilon|`` the ``p!`` orderings of a subset each hit the
    contraction once and the ``1/p!`` removes them; what remains is the
    value at the complementary subset (a bit flip).
    """
    if not 0 <= p <= t.n:
        raise ValueError(f"rank {p} outside 0..{t.n}")
    return {_complement(s, t.n): t.values[s] for s in _subsets(t.n, p)}


def _upper(t: SymTensorState) -> dict[Subset, object]:
    """Every upper component ``A^S`` (``S`` of any size)."""
    return {_complement(s, t.n): v for s, v in t.values.items()}


# -- transformations ---------------------------------------------------------

@dataclass(frozen=True)
class PhiN:
    C: tuple
    kind = "phi"

    def __post_init__(self):
        object.__setattr__(self, "C", tuple(_lift(c) for c in self.C))

    def parameters(self) -> list:
        return list(self.C)


@dataclass(frozen=True)
class PsiN:
    D: tuple
    kind = "psi"

    def __post_init__(self):
        object.__setattr__(self, "D", tuple(_lift(d) for d in self.D))

    def parameters(self) -> list:
        return list(self.D)


@dataclass(frozen=True)
class TauN:
    lam: tuple
    kind = "tau"

    def __post_init__(self):
        lam = tuple(_lift(v) for v in self.lam)
        if any(is_zero(v) for v in lam):
            raise ValueError("TauN parameters must be nonzero")
        object.__setattr__(self, "lam", lam)

    def parameters(self) -> list:
        return list(self.lam)


@dataclass(frozen=True)
class ZedN:
    kind = "zed"

    def parameters(self) -> list:
        return []


NTransform = Union[PhiN, PsiN, TauN, ZedN]


def _superset_sum(comp: dict[Subset, object], weights: Sequence, n: int) -> dict[Subset, object]:
    """``new[S] = sum_{T >= S} prod_{j in T - S} w_j * comp[T]``."""
    out = {}
    for s, v in comp.items():
        rest = _complement(s, n)
        total = v
        for size in range(1, len(rest) + 1):
            for added in combinations(rest, size):
                w = weights[added[0] - 1]
                for j in added[1:]:
                    w = w * weights[j - 1]
                if not w:
                    continue
                total = total + w * comp[tuple(sorted(s + added))]
        out[s] = total
    return out


def apply_ntransform(g: NTransform, t: SymTensorState) -> SymTensorState:
    n = t.n
    if isinstance(g, PhiN):
        if len(g.C) != n:
            raise ValueError(f"PhiN needs {n} parameters")
        # acts on upper tensors: A^[p] -> sum_k C^(k-p) A^[k]
        upper = _superset_sum(_upper(t), g.C, n)
        return SymTensorState(n, {_complement(s, n): v for s, v in upper.items()})
    if isinstance(g, PsiN):
        if len(g.D) != n:
            raise ValueError(f"PsiN needs {n} parameters")
        return SymTensorState(n, _superset_sum(t.values, g.D, n))
    if isinstance(g, TauN):
        if len(g.lam) != n:
            raise ValueError(f"TauN needs {n} parameters")
        out = {}
        for s, v in t.values.items():
            f = ExactComplex(1)
            for j in range(1, n + 1):
                f = f / g.lam[j - 1] if j in s else f * g.lam[j - 1]
            out[s] = f * v
        return SymTensorState(n, out)
    if isinstance(g, ZedN):
        # (0, -1; 1, 0) on every qubit
        out = {}
        for s in t.values:
            sign = -1 if (n - len(s)) % 2 else 1
            out[s] = sign * t.values[_complement(s, n)]
        return SymTensorState(n, out)
    raise TypeError(f"not an n-qubit transform: {g!r}")


def apply_ntransforms(word: Iterable[NTransform], t: SymTensorState) -> SymTensorState:
    for g in word:
        t = apply_ntransform(g, t)
    return t


def local_matrices(g: NTransform, n: int) -> list:
    """Per-qubit 2x2 matrices realizing ``g`` on amplitudes."""
    if isinstance(g, PhiN):
        return [[[1, 0], [c, 1]] for c in g.C]
    if isinstance(g, PsiN):
        return [[[1, d], [0, 1]] for d in g.D]
    if isinstance(g, TauN):
        return [[[v, 0], [0, 1 / v]] for v in g.lam]
    return [[[0, -1], [1, 0]] for _ in range(n)]


def to_fts_generator(g: NTransform):
    """Three-qubit dictionary into the Brown generators.

    Jordan slot ``k`` belongs to qubit ``3 - k`` (1-based), hence the reversal.
    ``ZedN`` is ``-Zed``; the sign is a global factor and is returned
    separately as the second item.
    """
    from .fts import Phi, Psi, Tau, Zed
    from .jordan import JordanElement

    if isinstance(g, PhiN):
        if len(g.C) != 3:
            raise ValueError("dictionary only exists for n = 3")
        return Phi(JordanElement(*reversed(g.C))), 1
    if isinstance(g, PsiN):
        if len(g.D) != 3:
            raise ValueError("dictionary only exists for n = 3")
        return Psi(JordanElement(*reversed(g.D))), 1
    if isinstance(g, TauN):
        if len(g.lam) != 3:
            raise ValueError("dictionary only exists for n = 3")
        prod = g.lam[0] * g.lam[1] * g.lam[2]
        mu = tuple(reversed(g.lam))
        return Tau(*(prod / (m * m) for m in mu)), 1
    return Zed(), -1


# -- invariant ---------------------------------------------------------------

def bilinear_invariant(t: SymTensorState, u: SymTensorState):
    """``sum_k (-1)^k / k! A_[k] B^[k]``, contracting over ordered index tuples."""
    if t.n != u.n:
        raise ValueError(f"qubit counts differ: {t.n} vs {u.n}")
    n = t.n
    upper = _upper(u)
    total = ExactComplex(0)
    for k in range(n + 1):
        acc = ExactComplex(0)
        for idx in permutations(range(1, n + 1), k):
            key = tuple(sorted(idx))
            acc = acc + t.values[key] * upper[key]
        term = acc * ExactComplex(mpq(1, factorial(k)))
        total = total + term if k % 2 == 0 else total - term
    return total


# -- normal forms ------------------------------------------------------------

def front_normalize(t: SymTensorState) -> tuple[SymTensorState, list[NTransform]]:
    """Reach top coefficient 1 with all one-bit-flip neighbours zero.

    "Top" is the all-ones amplitude ``A_[n]``; its neighbours are the
    ``n``-dimensional upper block ``A^i``.  For three qubits this is the
    ``alpha = 1, B = 0`` shape.
    """
    if t.is_null():
        raise InvalidStateError("cannot normalize the zero state")
    n = t.n
    full = tuple(range(1, n + 1))
    scale = t.max_abs()
    word: list[NTransform] = []

    def step(g):
        nonlocal t
        word.append(g)
        t = apply_ntransform(g, t)

    def neighbours():
        return [t.values[_complement((j,), n)] for j in full]

    def unit(j, value=1):
        return tuple(value if i == j else 0 for i in full)

    if t.values[full] == 1 and all(is_zero(v, scale) for v in neighbours()):
        return t, word
    if all(is_zero(v, scale) for v in neighbours()):
        if is_zero(t.values[full], scale):
            # heaviest nonzero amplitude moves to the top
            support = max((s for s, v in t.values.items() if not is_zero(v, scale)), key=len)
            step(PhiN(tuple(0 if j in support else 1 for j in full)))
        if all(is_zero(v, scale) for v in neighbours()):
            step(PsiN(unit(1)))
    top = t.values[full]
    if top != 1:
        nb = neighbours()
        k = next(j for j in full if not is_zero(nb[j - 1], scale))
        step(PhiN(unit(k, (1 - top) / nb[k - 1])))
    nb = neighbours()
    if not all(is_zero(v, scale) for v in nb):
        step(PsiN(tuple(-v for v in nb)))
    return t, word


@dataclass
class TwoQubitReduction:
    canonical: SymTensorState
    transcript: list[NTransform]
    invariant: object

    @property
    def k(self):
        return self.canonical.values[(1, 2)]


def two_qubit_reduce(t: SymTensorState) -> TwoQubitReduction:
    """Reduce a two-qubit state to ``{1, 0, k}`` (i.e. ``|00> + k|11>``).

    ``invariant`` is ``(A, A)`` of the input and always equals ``2k``.
    """
    if t.n != 2:
        raise ValueError("two_qubit_reduce needs n = 2")
    if t.is_null():
        raise InvalidStateError("cannot reduce the zero state")
    invariant = bilinear_invariant(t, t)
    scale = t.max_abs()
    word: list[NTransform] = []

    def step(g):
        nonlocal t
        word.append(g)
        t = apply_ntransform(g, t)

    def first_rank():
        return [t.values[(1,)], t.values[(2,)]]

    if t.values[()] != 1:
        if all(is_zero(v, scale) for v in first_rank()):
            if is_zero(t.values[()], scale):
                step(ZedN())
            step(PhiN((1, 0)))
        a = first_rank()
        j = 0 if not is_zero(a[0], scale) else 1
        d = (1 - t.values[()]) / a[j]
        # one-hot D is null for d_ij, so only the linear term moves A_0
        step(PsiN((d, 0) if j == 0 else (0, d)))
    a = first_rank()
    if not all(is_zero(v, scale) for v in a):
        step(PhiN((-a[0], -a[1])))
    return TwoQubitReduction(t, word, invariant)


def random_ntransform(rng: random.Random, n: int, zed: bool = True) -> NTransform:
    kind = rng.randrange(4 if zed else 3)
    if kind == 0:
        return PhiN(tuple(random_exact(rng, bound=2, max_den=2) for _ in range(n)))
    if kind == 1:
        return PsiN(tuple(random_exact(rng, bound=2, max_den=2) for _ in range(n)))
    if kind == 2:
        lam = []
        while len(lam) < n:
            v = random_exact(rng, bound=3, max_den=2)
            if v:
                lam.append(v)
        return TauN(tuple(lam))
    return ZedN()
