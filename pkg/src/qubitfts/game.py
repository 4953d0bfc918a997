"""The three-player GHZ game: classical bound, quantum strategies, basis search.

Questions ``rst`` are drawn uniformly from ``{000, 011, 101, 110}`` and the
players win when ``r or s or t == a xor b xor c``.  Every probability here is
computed by enumerating questions and outcomes; nothing is sampled unless
:func:`sample_win_rate` is called explicitly.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .states import InvalidStateError, QubitState

__all__ = [
    "QUESTIONS",
    "ClassicalStrategy",
    "MeasurementStrategy",
    "best_classical",
    "classical_win_probability",
    "ghz_strategy",
    "optimize_strategy",
    "quantum_win_probability",
    "sample_win_rate",
    "wins",
    "winstate",
]

QUESTIONS = ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))
WEIGHT = Fraction(1, 4)


def wins(questions, answers) -> bool:
    r, s, t = questions
    a, b, c = answers
    return (r | s | t) == (a ^ b ^ c)


@dataclass(frozen=True)
class ClassicalStrategy:
    """Deterministic answers; ``a[q]`` is Alice's answer to question ``q``."""

    a: tuple[int, int]
    b: tuple[int, int]
    c: tuple[int, int]

    @classmethod
    def constant(cls, value: int) -> ClassicalStrategy:
        return cls((value, value), (value, value), (value, value))


def classical_win_probability(strat: ClassicalStrategy) -> Fraction:
    hits = sum(wins(q, (strat.a[q[0]], strat.b[q[1]], strat.c[q[2]])) for q in QUESTIONS)
    return Fraction(hits, 4)


def best_classical() -> tuple[Fraction, list[ClassicalStrategy]]:
    """Exhaust all 64 deterministic strategies."""
    functions = list(itertools.product((0, 1), repeat=2))
    scored = [(classical_win_probability(ClassicalStrategy(a, b, c)), ClassicalStrategy(a, b, c))
              for a in functions for b in functions for c in functions]
    best = max(p for p, _ in scored)
    return best, [s for p, s in scored if p == best]


@dataclass(frozen=True)
class MeasurementStrategy:
    """Angles ``theta[p][q]``, ``phi[p][q]`` for player ``p`` on question ``q``.

    Outcome 0 is ``cos(theta)|0> + e^{i phi} sin(theta)|1>`` and outcome 1 is
    the orthogonal ``-e^{-i phi} sin(theta)|0> + cos(theta)|1>``.
    """

    theta: tuple[tuple[float, float], ...]
    phi: tuple[tuple[float, float], ...]

    @classmethod
    def from_vector(cls, v) -> MeasurementStrategy:
        v = [float(x) for x in v]
        theta = tuple((v[4 * p], v[4 * p + 2]) for p in range(3))
        phi = tuple((v[4 * p + 1], v[4 * p + 3]) for p in range(3))
        return cls(theta, phi)

    def to_vector(self) -> np.ndarray:
        """``[theta_p0, phi_p0, theta_p1, phi_p1]`` for each player in turn."""
        return np.array([x for p in range(3)
                         for q in range(2) for x in (self.theta[p][q], self.phi[p][q])])

    def basis(self, player: int, question: int) -> np.ndarray:
        """Rows are the two (conjugated) outcome bras."""
        return _bras(np.array(self.theta[player][question]), np.array(self.phi[player][question]))


def _bras(theta, phi):
    """Measurement bras for arrays of angles; shape ``(..., 2, 2)``."""
    c, s = np.cos(theta), np.sin(theta)
    e = np.exp(1j * phi)
    v0 = np.stack([c + 0j, e * s], axis=-1)
    v1 = np.stack([-np.conj(e) * s, c + 0j], axis=-1)
    return np.conj(np.stack([v0, v1], axis=-2))


def _as_tensor(state) -> np.ndarray:
    if isinstance(state, QubitState):
        if state.n != 3:
            raise InvalidStateError("the game needs a 3-qubit state")
        vec = np.array(state.to_complex(), dtype=complex)
    else:
        vec = np.asarray(state, dtype=complex).reshape(-1)
        if vec.size != 8:
            raise InvalidStateError("the game needs 8 amplitudes")
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise InvalidStateError("zero state")
    return (vec / norm).reshape(2, 2, 2)


# parity masks: _WIN[q_index][a, b, c] is 1 when answers win on that question triple
_WIN = np.array([[[[float(wins(q, (a, b, c))) for c in (0, 1)] for b in (0, 1)] for a in (0, 1)]
                 for q in QUESTIONS])


def _win_probability_batch(psi: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Win probability for a batch of 12-angle vectors, shape ``(m, 12)``."""
    v = vectors.reshape(-1, 3, 2, 2)       # player, question, (theta, phi)
    bras = _bras(v[..., 0], v[..., 1])     # (m, 3, 2, 2, 2): player, question, outcome, component
    total = np.zeros(len(v))
    for qi, (r, s, t) in enumerate(QUESTIONS):
        amp = np.einsum("mai,mbj,mck,ijk->mabc",
                        bras[:, 0, r], bras[:, 1, s], bras[:, 2, t], psi, optimize=False)
        total += np.einsum("mabc,abc->m", np.abs(amp) ** 2, _WIN[qi])
    return total / 4


def conditional_win(state, m: MeasurementStrategy, questions) -> float:
    """Win probability given one question triple."""
    psi = _as_tensor(state)
    r, s, t = questions
    amp = np.einsum("ai,bj,ck,ijk->abc", m.basis(0, r), m.basis(1, s), m.basis(2, t), psi)
    probs = np.abs(amp) ** 2
    return float(sum(probs[a, b, c] for a, b, c in itertools.product((0, 1), repeat=3)
                     if wins(questions, (a, b, c))))


def outcome_distribution(state, m: MeasurementStrategy, questions) -> np.ndarray:
    psi = _as_tensor(state)
    r, s, t = questions
    amp = np.einsum("ai,bj,ck,ijk->abc", m.basis(0, r), m.basis(1, s), m.basis(2, t), psi)
    return np.abs(amp) ** 2


def quantum_win_probability(state, m: MeasurementStrategy) -> float:
    psi = _as_tensor(state)
    return float(_win_probability_batch(psi, m.to_vector()[None, :])[0])


def winstate() -> QubitState:
    """``(|000> - |011> - |101> - |110>) / 2`` in floating point."""
    return QubitState(3, {"000": 0.5, "011": -0.5, "101": -0.5, "110": -0.5})


def ghz_strategy() -> tuple[QubitState, MeasurementStrategy]:
    """Computational basis on question 0, Hadamard basis on question 1."""
    theta = ((0.0, math.pi / 4),) * 3
    phi = ((0.0, 0.0),) * 3
    return winstate(), MeasurementStrategy(theta, phi)


def sample_win_rate(state, m: MeasurementStrategy, shots: int, seed: int,
                    z: float = 1.96) -> tuple[float, tuple[float, float]]:
    """Monte Carlo estimate with a Wilson interval; for demonstrations only."""
    rng = np.random.default_rng(seed)
    qs = rng.integers(0, 4, size=shots)
    won = 0
    for qi in range(4):
        n_q = int(np.sum(qs == qi))
        if not n_q:
            continue
        p = outcome_distribution(state, m, QUESTIONS[qi]).reshape(-1)
        outcomes = rng.choice(8, size=n_q, p=p / p.sum())
        won += int(np.sum(_WIN[qi].reshape(-1)[outcomes]))
    phat = won / shots
    denom = 1 + z * z / shots
    centre = (phat + z * z / (2 * shots)) / denom
    half = z * math.sqrt(phat * (1 - phat) / shots + z * z / (4 * shots * shots)) / denom
    return phat, (centre - half, centre + half)


# -- optimizer ---------------------------------------------------------------

_GRID = 64
_GOLDEN = (math.sqrt(5) - 1) / 2
_PERIODS = np.array([math.pi, 2 * math.pi] * 6)


def _golden_max(f, lo: float, hi: float, tol: float = 1e-10, max_iter: int = 80):
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a < tol:
            break
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def _coordinate_function(psi: np.ndarray, x: np.ndarray, i: int):
    """Objective along coordinate ``i`` with the other eleven angles frozen.

    Only the question triples where the moving player receives the moving
    question depend on the angle; for those the win probability is
    ``sum_a <b_a| K_a |b_a>`` with 2x2 matrices ``K_a`` built once here.
    """
    player, question, which = i // 4, (i % 4) // 2, i % 2
    v = x.reshape(3, 2, 2)
    bras = _bras(v[..., 0], v[..., 1])          # player, question, outcome, component
    moved = np.moveaxis(psi, player, -1)        # other players first, mover last
    others = [p for p in range(3) if p != player]
    const = 0.0
    K = np.zeros((2, 2, 2), dtype=complex)
    for qi, qs in enumerate(QUESTIONS):
        o1, o2 = (bras[p, qs[p]] for p in others)
        vec = np.einsum("ai,bj,ijk->abk", o1, o2, moved)     # outcome pair -> mover vector
        win = np.moveaxis(_WIN[qi], player, -1)             # (o1, o2, a)
        if qs[player] == question:
            M = np.einsum("abk,abl->abkl", vec, np.conj(vec))
            K += np.einsum("aby,abkl->ykl", win, M)
        else:
            amp = np.einsum("abk,yk->aby", vec, bras[player, qs[player]])
            const += float(np.sum(np.abs(amp) ** 2 * win))
    theta0, phi0 = (float(a) for a in v[player, question])
    k = K.tolist()

    def f(t):
        t = np.asarray(t, dtype=float)
        th, ph = (t, np.full_like(t, phi0)) if which == 0 else (np.full_like(t, theta0), t)
        b = _bras(th, ph)                       # (..., outcome, component)
        val = np.einsum("...yk,ykl,...yl->...", b, K, np.conj(b)).real
        return (const + val) / 4

    def f_scalar(t: float) -> float:
        th, ph = (t, phi0) if which == 0 else (theta0, t)
        c, s = math.cos(th), math.sin(th)
        e = cmath.exp(1j * ph)
        total = const
        # kets v0, v1; <b_y| K_y |b_y> with b_y = conj(v_y)
        for y, (u0, u1) in enumerate(((c, e * s), (-e.conjugate() * s, c))):
            b0, b1 = complex(u0).conjugate(), complex(u1).conjugate()
            ky = k[y]
            total += (b0 * ky[0][0] * u0 + b0 * ky[0][1] * u1
                      + b1 * ky[1][0] * u0 + b1 * ky[1][1] * u1).real
        return total / 4

    return f, f_scalar


def _ascend(psi: np.ndarray, x: np.ndarray, tol: float = 1e-9, max_sweeps: int = 2000):
    x = np.mod(x, _PERIODS)
    value = float(_win_probability_batch(psi, x[None, :])[0])
    history = [value]
    for _ in range(max_sweeps):
        start = value
        for i in range(12):
            period = _PERIODS[i]
            step = period / _GRID
            grid = np.arange(_GRID) * step
            f, f_scalar = _coordinate_function(psi, x, i)
            scores = f(grid)
            j = int(np.argmax(scores))
            t_best, v_best = _golden_max(f_scalar, grid[j] - step, grid[j] + step)
            if scores[j] > v_best:
                t_best, v_best = grid[j], float(scores[j])
            if v_best > value:
                x = x.copy()
                x[i] = t_best % period
                value = v_best
        history.append(value)
        if value - start < tol:
            break
    # report the value of the returned angles through the full evaluator
    value = max(history[0], float(_win_probability_batch(psi, x[None, :])[0]))
    history[-1] = value
    return value, x, history


def optimize_strategy(state, restarts: int = 8, seed: int = 0, return_history: bool = False):
    """Random-restart coordinate ascent over the 12 measurement angles.

    Each restart draws its start point from ``numpy.random.default_rng(seed)``
    in turn, then sweeps the coordinates (64-point scan, golden-section polish)
    until a sweep gains less than 1e-9.  The best value wins; ties go to the
    lexicographically smallest angle vector.
    """
    psi = _as_tensor(state)
    if restarts < 1:
        raise ValueError("need at least one restart")
    rng = np.random.default_rng(seed)
    starts = [rng.uniform(0, 1, size=12) * _PERIODS for _ in range(restarts)]
    results = []
    histories = []
    for x0 in starts:
        value, x, hist = _ascend(psi, x0)
        results.append((value, x))
        histories.append(hist)
    best_value = max(v for v, _ in results)
    tied = [x for v, x in results if v == best_value]
    best_x = min(tied, key=lambda x: tuple(x))
    strategy = MeasurementStrategy.from_vector(best_x)
    if return_history:
        return best_value, strategy, histories
    return best_value, strategy
