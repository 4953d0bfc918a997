"""Three-qubit SLOCC classification through FTS ranks, and the canonical reduction.

Amplitudes map onto the triple system as

    alpha = a111, beta = a000, A = (a001, a010, a100), B = (a110, a101, a011)

so Jordan slot ``k`` (0-based) belongs to qubit ``2 - k``.  Every Brown
generator is a product of local matrices under this identification, which
is why a reduction transcript never changes a biseparable label.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .fts import (
    FtsElement,
    FtsGenerator,
    Phi,
    Psi,
    Tau,
    Zed,
    apply_generator,
    apply_word,
    fts_rank,
    quartic_norm,
)
from .jordan import BASIS as J_BASIS, JordanElement, cubic_norm, jordan_rank
from .scalars import ExactComplex, is_zero
from .states import (
    InvalidStateError,
    QubitState,
    apply_slocc,
    flattening_rank,
    permute_qubits,
    random_sl2,
    random_state,
)

__all__ = [
    "EntanglementClass",
    "InvariantViolation",
    "ReductionResult",
    "cayley_hyperdet",
    "classify",
    "class_from_name",
    "fts_to_state",
    "local_ranks",
    "normalize_representative",
    "random_class_member",
    "reduce_canonical",
    "representative",
    "state_to_fts",
]

QUBIT_LABELS = ("A", "B", "C")
_BISEP_LABELS = {"A": "A-BC", "B": "B-CA", "C": "C-AB"}


class InvariantViolation(ArithmeticError):
    """An internal consistency check failed (a bug, not bad input)."""


@dataclass(frozen=True)
class EntanglementClass:
    """One of Null, Separable, Biseparable(qubit), W, GHZ(q)."""

    name: str
    separated: str | None = None
    q: object = None
    tolerance_dependent: bool = field(default=False, compare=False)

    @property
    def label(self) -> str:
        if self.name == "Separable":
            return "A-B-C"
        if self.name == "Biseparable":
            return _BISEP_LABELS[self.separated]
        return self.name

    @property
    def rank(self) -> int:
        return {"Null": 0, "Separable": 1, "Biseparable": 2, "W": 3, "GHZ": 4}[self.name]


def class_from_name(name: str, q=None, k=None, separated: str = "A") -> EntanglementClass:
    """Parse ``Null``, ``Separable``/``A-B-C``, ``Biseparable``/``A-BC``/... , ``W``, ``GHZ``."""
    key = name.strip()
    aliases = {"null": "Null", "separable": "Separable", "a-b-c": "Separable",
               "biseparable": "Biseparable", "w": "W", "ghz": "GHZ"}
    for qubit, lab in _BISEP_LABELS.items():
        aliases[lab.lower()] = ("Biseparable", qubit)
    hit = aliases.get(key.lower())
    if hit is None:
        raise ValueError(f"unknown entanglement class {name!r}")
    if isinstance(hit, tuple):
        return EntanglementClass("Biseparable", hit[1])
    if hit == "Biseparable":
        return EntanglementClass("Biseparable", separated)
    if hit == "GHZ":
        if q is None:
            k = ExactComplex(1) if k is None else k
            q = -8 * k
        if is_zero(q):
            raise ValueError("GHZ class needs q != 0")
        return EntanglementClass("GHZ", q=q)
    return EntanglementClass(hit)


def _require3(s: QubitState):
    if s.n != 3:
        raise InvalidStateError(f"expected a 3-qubit state, got n={s.n}")


def state_to_fts(s: QubitState) -> FtsElement:
    _require3(s)
    return FtsElement(s["111"], s["000"],
                      JordanElement(s["001"], s["010"], s["100"]),
                      JordanElement(s["110"], s["101"], s["011"]))


def fts_to_state(x: FtsElement) -> QubitState:
    a1, a2, a3 = x.A.c
    b1, b2, b3 = x.B.c
    return QubitState(3, {"111": x.alpha, "000": x.beta,
                          "001": a1, "010": a2, "100": a3,
                          "110": b1, "101": b2, "011": b3})


def local_ranks(s: QubitState) -> tuple[int, int, int]:
    """Ranks of the three 2x4 flattenings; the independent classification oracle."""
    _require3(s)
    if s.is_null():
        raise InvalidStateError("local ranks undefined for the zero state")
    return tuple(flattening_rank(s, q) for q in range(3))


def cayley_hyperdet(s: QubitState):
    """Cayley's 2x2x2 hyperdeterminant of the amplitude cube."""
    _require3(s)
    a = {k: s[k] for k in ("000", "001", "010", "011", "100", "101", "110", "111")}
    sq = (a["000"] * a["000"] * a["111"] * a["111"] + a["001"] * a["001"] * a["110"] * a["110"]
          + a["010"] * a["010"] * a["101"] * a["101"] + a["100"] * a["100"] * a["011"] * a["011"])
    mixed = (a["000"] * a["111"] * a["011"] * a["100"] + a["000"] * a["111"] * a["101"] * a["010"]
             + a["000"] * a["111"] * a["110"] * a["001"] + a["011"] * a["100"] * a["101"] * a["010"]
             + a["011"] * a["100"] * a["110"] * a["001"] + a["101"] * a["010"] * a["110"] * a["001"])
    cubic = (a["000"] * a["110"] * a["101"] * a["011"] + a["111"] * a["001"] * a["010"] * a["100"])
    return sq - 2 * mixed + 4 * cubic


def _separated_from_ranks(ranks: Sequence[int]) -> str:
    ones = [QUBIT_LABELS[i] for i, r in enumerate(ranks) if r == 1]
    if len(ones) != 1:
        raise InvariantViolation(f"rank 2 state with flattening ranks {tuple(ranks)}")
    return ones[0]


def classify(s: QubitState) -> EntanglementClass:
    """SLOCC class of a 3-qubit state from the FTS rank of its image."""
    _require3(s)
    approx = not s.exact
    x = state_to_fts(s)
    rank = fts_rank(x)
    if rank == 0:
        return EntanglementClass("Null", tolerance_dependent=approx)
    if rank == 1:
        return EntanglementClass("Separable", tolerance_dependent=approx)
    if rank == 2:
        return EntanglementClass("Biseparable", _separated_from_ranks(local_ranks(s)),
                                 tolerance_dependent=approx)
    if rank == 3:
        return EntanglementClass("W", tolerance_dependent=approx)
    return EntanglementClass("GHZ", q=quartic_norm(x), tolerance_dependent=approx)


def expected_ranks(cls: EntanglementClass) -> tuple[int, int, int]:
    """Flattening rank pattern each class must show."""
    if cls.name == "Separable":
        return (1, 1, 1)
    if cls.name == "Biseparable":
        return tuple(1 if lab == cls.separated else 2 for lab in QUBIT_LABELS)
    if cls.name in ("W", "GHZ"):
        return (2, 2, 2)
    raise ValueError("Null has no flattening pattern")


# -- canonical reduction -----------------------------------------------------

@dataclass
class ReductionResult:
    canonical: FtsElement
    transcript: list[FtsGenerator]
    rank: int
    cls: EntanglementClass

    @property
    def k(self):
        """GHZ parameter ``N(A)``; zero below rank 4."""
        return cubic_norm(self.canonical.A) if self.rank == 4 else ExactComplex(0)

    def replay(self, s: QubitState) -> FtsElement:
        return apply_word(self.transcript, state_to_fts(s))


def _zero(v, scale) -> bool:
    return is_zero(v, scale)


def _reduce(x: FtsElement) -> tuple[FtsElement, list[FtsGenerator]]:
    word: list[FtsGenerator] = []

    def step(g):
        nonlocal x
        word.append(g)
        x = apply_generator(g, x)

    scale = x.max_abs()

    def zero(v):
        return _zero(v, scale)

    def jzero(A):
        return all(zero(v) for v in A.c)

    if not (x.alpha == 1 and jzero(x.B)):
        # make B nonzero
        if jzero(x.B):
            if not jzero(x.A):
                step(Zed())
            else:
                if zero(x.alpha):
                    step(Zed())
                step(Psi(J_BASIS[0]))
        # alpha -> 1 with a rank-one C on the first nonzero slot of B
        if x.alpha != 1:
            kk = next(i for i, v in enumerate(x.B.c) if not zero(v))
            step(Phi(J_BASIS[kk].scale((1 - x.alpha) / x.B.c[kk])))
        if not jzero(x.B):
            step(Psi(-x.B))
    # now (1, beta, A, 0); remove beta
    if not zero(x.beta):
        if jordan_rank(x.A) == 0:
            step(Phi(J_BASIS[0]))
        if jordan_rank(x.A) == 1:
            kk = next(i for i, v in enumerate(x.A.c) if not zero(v))
            m = next(i for i in range(3) if i != kk)
            C = J_BASIS[m]
            step(Phi(C))
            step(Psi(-x.B))
        # two or three nonzero slots: scale into the first zero slot, else slot 0
        zeros = [i for i, v in enumerate(x.A.c) if zero(v)]
        r = zeros[0] if zeros else 0
        p, q = (i for i in range(3) if i != r)
        c = x.beta / (2 * x.A.c[p] * x.A.c[q])
        step(Phi(J_BASIS[r].scale(c)))
        step(Psi(-x.B))
    return x, word


def _class_of_reduced(x: FtsElement, approx: bool) -> tuple[int, EntanglementClass]:
    rank = 1 + jordan_rank(x.A)
    if rank == 1:
        return 1, EntanglementClass("Separable", tolerance_dependent=approx)
    if rank == 2:
        sep = _separated_from_ranks(local_ranks(fts_to_state(x)))
        return 2, EntanglementClass("Biseparable", sep, tolerance_dependent=approx)
    if rank == 3:
        return 3, EntanglementClass("W", tolerance_dependent=approx)
    return 4, EntanglementClass("GHZ", q=-8 * cubic_norm(x.A), tolerance_dependent=approx)


def reduce_canonical(s: QubitState) -> ReductionResult:
    """SLOCC-reduce a nonzero 3-qubit state to ``(1, 0, A, 0)``.

    The transcript lists the generators applied, in order; replaying it on
    ``state_to_fts(s)`` reproduces ``canonical`` exactly on exact input.
    """
    _require3(s)
    if s.is_null():
        raise InvalidStateError("cannot reduce the zero state")
    x, word = _reduce(state_to_fts(s))
    scale = x.max_abs()
    if x.alpha != 1 and not is_zero(x.alpha - 1, scale):
        raise InvariantViolation(f"reduction left alpha = {x.alpha}")
    if not (is_zero(x.beta, scale) and all(is_zero(v, scale) for v in x.B.c)):
        raise InvariantViolation(f"reduction did not reach (1, 0, A, 0): {x}")
    rank, cls = _class_of_reduced(x, not s.exact)
    return ReductionResult(x, word, rank, cls)


def _swap_slot_to_last(x: FtsElement, slot: int) -> FtsElement:
    if slot == 2:
        return x
    # slot k is qubit 2 - k; slot 2 is qubit 0
    qubit = 2 - slot
    perm = list(range(3))
    perm[qubit], perm[0] = 0, qubit
    return state_to_fts(permute_qubits(fts_to_state(x), perm))


def normalize_representative(r: ReductionResult | FtsElement):
    """Scale a reduced form onto its literal representative; returns ``(x, k)``.

    Uses a norm-preserving torus element (``c1 c2 c3 = 1``), then a qubit
    permutation so the result matches the tabulated state.  ``k`` is
    ``N(A) = -q/8`` for GHZ-class input and zero otherwise.
    """
    x = r.canonical if isinstance(r, ReductionResult) else r
    scale = x.max_abs()
    if not (x.alpha == 1 and is_zero(x.beta, scale) and all(is_zero(v, scale) for v in x.B.c)):
        raise ValueError("input is not in reduced form (1, 0, A, 0)")
    a = x.A.c
    nz = [i for i, v in enumerate(a) if not is_zero(v, scale)]
    zero_k = ExactComplex(0)
    if not nz:
        return FtsElement(1, 0), zero_k
    if len(nz) == 1:
        kk = nz[0]
        other = (kk + 1) % 3
        c = [ExactComplex(1)] * 3
        c[kk] = 1 / a[kk]
        c[other] = a[kk]
        y = apply_generator(Tau(*c), x)
        return _swap_slot_to_last(y, kk), zero_k
    if len(nz) == 2:
        p, q = nz
        rr = next(i for i in range(3) if i not in nz)
        c = [None] * 3
        c[p], c[q], c[rr] = 1 / a[p], 1 / a[q], a[p] * a[q]
        y = apply_generator(Tau(*c), x)
        return _swap_slot_to_last(y, rr), zero_k
    y = apply_generator(Tau(1 / a[0], 1 / a[1], a[0] * a[1]), x)
    return y, y.A.c[2]


def representative(cls: EntanglementClass) -> QubitState:
    """Literal representative state of a class."""
    if cls.name == "Null":
        return QubitState(3)
    if cls.name == "Separable":
        return QubitState(3, {"111": 1})
    if cls.name == "Biseparable":
        key = {"A": "100", "B": "010", "C": "001"}[cls.separated]
        return QubitState(3, {"111": 1, key: 1})
    if cls.name == "W":
        return QubitState(3, {"111": 1, "001": 1, "010": 1})
    if cls.name == "GHZ":
        k = -cls.q / 8
        return QubitState(3, {"111": 1, "001": 1, "010": 1, "100": k})
    raise ValueError(f"unknown class {cls!r}")


def random_class_member(rng: random.Random, cls: EntanglementClass) -> QubitState:
    """Random determinant-one local image of the class representative."""
    rep = representative(cls)
    return apply_slocc(rep, [random_sl2(rng) for _ in range(3)])


def random_dense_state(rng: random.Random) -> QubitState:
    while True:
        s = random_state(rng, 3)
        if not s.is_null():
            return s
