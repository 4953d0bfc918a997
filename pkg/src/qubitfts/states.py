"""Amplitude-indexed n-qubit pure states and local (SLOCC) actions on them."""

from __future__ import annotations

import random
from typing import Iterable, Mapping, Sequence

from . import _linalg
from .scalars import ExactComplex, is_exact, is_zero, magnitude, random_exact

__all__ = [
    "QubitState",
    "InvalidStateError",
    "apply_slocc",
    "bits",
    "permute_qubits",
    "random_sl2",
    "random_state",
]


class InvalidStateError(ValueError):
    pass


def _lift(x):
    if isinstance(x, (ExactComplex, complex)):
        return x
    if isinstance(x, float):
        return complex(x)
    return ExactComplex(x)


def bits(index: int, n: int) -> str:
    return format(index, f"0{n}b") if n else ""


class QubitState:
    """Unnormalized state on ``n`` qubits; qubit 1 is the leftmost bit.

    Amplitudes are kept as a dense tuple indexed by ``int(bitstring, 2)``.
    """

    __slots__ = ("n", "vector")

    def __init__(self, n: int, amplitudes: Mapping[str, object] | None = None):
        if n < 1:
            raise InvalidStateError("need at least one qubit")
        vec = [ExactComplex(0)] * (1 << n)
        for key, value in (amplitudes or {}).items():
            if len(key) != n or set(key) - {"0", "1"}:
                raise InvalidStateError(f"bad basis label {key!r} for n={n}")
            vec[int(key, 2)] = _lift(value)
        self.n = n
        self.vector = tuple(vec)

    @classmethod
    def from_vector(cls, values: Sequence, n: int | None = None) -> QubitState:
        if n is None:
            n = max(1, (len(values) - 1).bit_length())
        if len(values) != 1 << n:
            raise InvalidStateError(f"expected {1 << n} amplitudes, got {len(values)}")
        obj = object.__new__(cls)
        obj.n = n
        obj.vector = tuple(_lift(v) for v in values)
        return obj

    def __getitem__(self, key: str):
        return self.vector[int(key, 2)]

    def amplitudes(self) -> dict[str, object]:
        """Nonzero amplitudes keyed by bit string."""
        return {bits(i, self.n): v for i, v in enumerate(self.vector) if v != 0}

    def items(self) -> Iterable[tuple[str, object]]:
        return ((bits(i, self.n), v) for i, v in enumerate(self.vector))

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in self.vector)

    def max_abs(self) -> float:
        return max(magnitude(v) for v in self.vector)

    def is_null(self) -> bool:
        scale = self.max_abs()
        return all(is_zero(v, scale) for v in self.vector)

    def scale(self, s) -> QubitState:
        return QubitState.from_vector([s * v for v in self.vector], self.n)

    def __add__(self, other: QubitState) -> QubitState:
        if other.n != self.n:
            raise InvalidStateError("qubit counts differ")
        return QubitState.from_vector([a + b for a, b in zip(self.vector, other.vector)], self.n)

    def __eq__(self, other):
        if not isinstance(other, QubitState):
            return NotImplemented
        return self.n == other.n and self.vector == other.vector

    def __hash__(self):
        return hash((self.n, self.vector))

    def __repr__(self):
        terms = " + ".join(f"{v}|{k}>" for k, v in self.amplitudes().items()) or "0"
        return f"QubitState(n={self.n}: {terms})"

    def to_complex(self) -> list[complex]:
        return [complex(v) for v in self.vector]


def _check_matrix(g):
    if len(g) != 2 or any(len(row) != 2 for row in g):
        raise InvalidStateError("local matrices must be 2x2")
    det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    if is_zero(det, max(magnitude(v) for row in g for v in row) ** 2):
        raise InvalidStateError("singular local matrix")


def apply_slocc(s: QubitState, matrices: Sequence[Sequence[Sequence]]) -> QubitState:
    """Apply ``g_1 (x) ... (x) g_n`` to the amplitude vector.

    Each ``g_i`` acts on the column ``(a_0, a_1)`` of qubit ``i``.
    """
    if len(matrices) != s.n:
        raise InvalidStateError(f"need {s.n} local matrices, got {len(matrices)}")
    vec = list(s.vector)
    n = s.n
    for q, g in enumerate(matrices):
        g = [[_lift(v) for v in row] for row in g]
        _check_matrix(g)
        shift = n - 1 - q
        mask = 1 << shift
        out = list(vec)
        for i in range(len(vec)):
            if i & mask:
                continue
            a0, a1 = vec[i], vec[i | mask]
            out[i] = g[0][0] * a0 + g[0][1] * a1
            out[i | mask] = g[1][0] * a0 + g[1][1] * a1
        vec = out
    return QubitState.from_vector(vec, n)


def permute_qubits(s: QubitState, perm: Sequence[int]) -> QubitState:
    """Move qubit ``i`` to position ``perm[i]`` (0-based)."""
    n = s.n
    if sorted(perm) != list(range(n)):
        raise InvalidStateError(f"not a permutation of {n} qubits: {perm}")
    vec = [None] * len(s.vector)
    for i, v in enumerate(s.vector):
        old = bits(i, n)
        new = [""] * n
        for q, b in enumerate(old):
            new[perm[q]] = b
        vec[int("".join(new), 2)] = v
    return QubitState.from_vector(vec, n)


def random_state(rng: random.Random, n: int = 3, **kwargs) -> QubitState:
    return QubitState.from_vector([random_exact(rng, **kwargs) for _ in range(1 << n)], n)


def random_sl2(rng: random.Random, bound: int = 3, max_den: int = 2):
    """Random exact 2x2 matrix with determinant exactly 1."""
    while True:
        a = random_exact(rng, bound=bound, max_den=max_den)
        if a:
            break
    b = random_exact(rng, bound=bound, max_den=max_den)
    c = random_exact(rng, bound=bound, max_den=max_den)
    d = (1 + b * c) / a
    return [[a, b], [c, d]]


def flattening_rank(s: QubitState, qubit: int) -> int:
    """Rank of the ``2 x 2^(n-1)`` matrix separating ``qubit`` (0-based)."""
    n = s.n
    rows = [[], []]
    for i, v in enumerate(s.vector):
        rows[(i >> (n - 1 - qubit)) & 1].append(v)
    return _linalg.matrix_rank(rows, s.max_abs())
