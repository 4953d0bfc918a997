import math
import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given

from qubitfts.classify import (
    EntanglementClass,
    InvariantViolation,
    cayley_hyperdet,
    class_from_name,
    classify,
    expected_ranks,
    fts_to_state,
    local_ranks,
    normalize_representative,
    random_class_member,
    random_dense_state,
    reduce_canonical,
    representative,
    state_to_fts,
)
from qubitfts.fts import FtsElement as F, apply_word, fts_rank, quartic_norm
from qubitfts.jordan import JordanElement as J, cubic_norm
from qubitfts.scalars import exact
from qubitfts.states import InvalidStateError, QubitState, permute_qubits

import oracles
from strategies import states

R2 = 1 / math.sqrt(2)
R3 = 1 / math.sqrt(3)

CLASSES = [class_from_name(n) for n in ("A-B-C", "A-BC", "B-CA", "C-AB", "W")] + [
    class_from_name("GHZ", k=exact(Fraction(1, 4))),
    class_from_name("GHZ", k=exact(2, -1)),
]


def test_state_to_fts_examples():
    assert state_to_fts(QubitState(3, {"000": 1})) == F(0, 1)
    ghz = state_to_fts(QubitState(3, {"000": R2, "111": R2}))
    assert ghz == F(complex(R2), complex(R2))
    w = state_to_fts(QubitState(3, {"001": R3, "010": R3, "100": R3}))
    assert w == F(0, 0, J(complex(R3), complex(R3), complex(R3)))
    with pytest.raises(InvalidStateError):
        state_to_fts(QubitState(2, {"00": 1}))


def test_identification_slots():
    s = QubitState(3, {"001": 1, "010": 2, "100": 3, "110": 4, "101": 5, "011": 6})
    x = state_to_fts(s)
    assert x.A == J(1, 2, 3) and x.B == J(4, 5, 6)


@given(states(3))
def test_round_trip(s):
    assert fts_to_state(state_to_fts(s)) == s


def test_local_ranks_examples():
    assert local_ranks(QubitState(3, {"111": 1})) == (1, 1, 1)
    assert local_ranks(QubitState(3, {"100": 1, "111": 1})) == (1, 2, 2)
    assert local_ranks(QubitState(3, {"000": 1, "111": 1})) == (2, 2, 2)
    with pytest.raises(InvalidStateError):
        local_ranks(QubitState(3))


def test_hyperdet_examples():
    ghz = QubitState(3, {"000": 1, "111": 1})
    assert cayley_hyperdet(ghz) == 1
    assert cayley_hyperdet(ghz.scale(exact(Fraction(1, 2)))) == Fraction(1, 16)
    approx = QubitState(3, {"000": R2, "111": R2})
    assert abs(cayley_hyperdet(approx) - 0.25) < 1e-12
    assert abs(quartic_norm(state_to_fts(approx)) + 0.5) < 1e-12
    assert cayley_hyperdet(QubitState(3, {"001": 1, "010": 1, "100": 1})) == 0


def test_hyperdet_vanishes_on_products():
    rng = random.Random(6)
    for _ in range(20):
        vs = [[exact(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(2)] for _ in range(3)]
        s = QubitState.from_vector([vs[0][i] * vs[1][j] * vs[2][k]
                                    for i in (0, 1) for j in (0, 1) for k in (0, 1)], 3)
        assert cayley_hyperdet(s) == 0


@given(states(3))
def test_hyperdet_matches_discriminant_oracle(s):
    a = {k: oracles.to_sympy(v) for k, v in s.items()}
    assert oracles.to_sympy(cayley_hyperdet(s)) == oracles.hyperdet(a)
    assert quartic_norm(state_to_fts(s)) == -2 * cayley_hyperdet(s)


def test_reduced_form_hyperdet():
    # the reduced form's support is {111, 001, 010, 100}
    a1, a2, a3 = sp.symbols("a1 a2 a3")
    a = {k: 0 for k in ("000", "011", "101", "110")}
    a.update({"111": 1, "001": a1, "010": a2, "100": a3})
    assert sp.expand(oracles.hyperdet(a)) == 4 * a1 * a2 * a3


def test_classify_examples():
    assert classify(QubitState(3, {"111": 1, "100": 1})) == EntanglementClass("Biseparable", "A")
    assert classify(QubitState(3, {"111": 1, "001": 1, "010": 1})).name == "W"
    ghz = classify(QubitState(3, {"000": R2, "111": R2}))
    assert ghz.name == "GHZ" and abs(ghz.q + 0.5) < 1e-12 and ghz.tolerance_dependent
    assert classify(QubitState(3)).name == "Null"
    assert classify(QubitState(3, {"111": 1})).label == "A-B-C"


def test_biseparable_labels():
    for key, label in (("100", "A-BC"), ("010", "B-CA"), ("001", "C-AB")):
        cls = classify(QubitState(3, {"111": 1, key: 1}))
        assert cls.label == label and cls.rank == 2


def test_class_from_name():
    assert class_from_name("ghz").q == -8
    assert class_from_name("GHZ", k=exact(3)).q == -24
    assert class_from_name("biseparable", separated="C").label == "C-AB"
    with pytest.raises(ValueError):
        class_from_name("GHZ", k=exact(0))
    with pytest.raises(ValueError):
        class_from_name("bell")


def test_representative_examples():
    assert representative(class_from_name("Separable")) == QubitState(3, {"111": 1})
    assert representative(class_from_name("W")) == QubitState(3, {"111": 1, "001": 1, "010": 1})
    assert representative(EntanglementClass("GHZ", q=exact(-8))) == QubitState(
        3, {"111": 1, "001": 1, "010": 1, "100": 1})
    assert representative(class_from_name("A-BC")) == QubitState(3, {"111": 1, "100": 1})


@pytest.mark.parametrize("cls", CLASSES, ids=lambda c: c.label)
def test_representatives_classify_to_themselves(cls):
    s = representative(cls)
    assert classify(s) == cls
    assert local_ranks(s) == expected_ranks(cls)


@pytest.mark.parametrize("cls", CLASSES, ids=lambda c: c.label)
def test_class_invariance_under_slocc(cls):
    rng = random.Random(hash(cls.label) & 0xFFFF)
    for _ in range(5):
        s = random_class_member(rng, cls)
        assert classify(s) == cls
        assert local_ranks(s) == expected_ranks(cls)


def test_permutation_only_moves_biseparable_label():
    rng = random.Random(9)
    for cls in CLASSES:
        s = random_class_member(rng, cls)
        p = classify(permute_qubits(s, [1, 2, 0]))
        assert p.name == cls.name
        if cls.name == "GHZ":
            assert p.q == cls.q


def test_reduce_examples():
    r = reduce_canonical(QubitState(3, {"000": 1}))
    assert r.canonical == F(1) and r.rank == 1 and r.cls.name == "Separable"
    r = reduce_canonical(QubitState(3, {"000": 1, "111": 1}))
    assert r.canonical.alpha == 1 and r.canonical.beta == 0 and not r.canonical.B
    assert cubic_norm(r.canonical.A) == Fraction(1, 4) and r.k == Fraction(1, 4)
    w = F(1, 0, J(1, 1, 0))
    r = reduce_canonical(fts_to_state(w))
    assert r.canonical == w and r.rank == 3 and r.transcript == []
    with pytest.raises(InvalidStateError):
        reduce_canonical(QubitState(3))


def test_reduce_transcripts_replay_and_stay_short():
    rng = random.Random(10)
    samples = [random_dense_state(rng) for _ in range(30)]
    samples += [random_class_member(rng, c) for c in CLASSES for _ in range(4)]
    for s in samples:
        r = reduce_canonical(s)
        assert r.replay(s) == r.canonical == apply_word(r.transcript, state_to_fts(s))
        assert len(r.transcript) <= 7
        assert r.rank == fts_rank(state_to_fts(s))
        assert r.cls == classify(s)
        if r.rank == 4:
            assert cubic_norm(r.canonical.A) == -quartic_norm(state_to_fts(s)) / 8


def test_reduce_covers_every_step4_case():
    # A = 0 with beta != 0, A of rank 1, and A of rank 2 with beta != 0
    for x in (F(1, 3), F(1, 2, J(0, 5, 0)), F(1, 2, J(3, 0, 5)), F(0, 1, J(0, 0, 0), J(0, 2, 0))):
        s = fts_to_state(x)
        r = reduce_canonical(s)
        assert r.replay(s) == r.canonical
        assert r.rank == fts_rank(x)


def test_reduce_flags_approx_input():
    r = reduce_canonical(QubitState(3, {"000": R2, "111": R2}))
    assert r.cls.tolerance_dependent and r.rank == 4
    assert abs(r.k - 0.0625) < 1e-12   # -q/8 with q = -1/2


def test_normalize_examples():
    x, k = normalize_representative(F(1, 0, J(5, 7, 0)))
    assert x == F(1, 0, J(1, 1, 0)) and k == 0
    x, k = normalize_representative(F(1, 0, J(2, 3, 5)))
    assert x == F(1, 0, J(1, 1, 30)) and k == 30
    x, k = normalize_representative(F(1))
    assert x == F(1) and k == 0
    x, _ = normalize_representative(F(1, 0, J(0, 4, 0)))
    assert fts_to_state(x) == QubitState(3, {"111": 1, "100": 1})
    with pytest.raises(ValueError):
        normalize_representative(F(2, 0, J(1, 1, 1)))


def test_normalize_from_reduction_matches_table():
    rng = random.Random(12)
    for cls in CLASSES:
        r = reduce_canonical(random_class_member(rng, cls))
        x, k = normalize_representative(r)
        if cls.name == "GHZ":
            assert k == -cls.q / 8
            assert fts_to_state(x) == representative(cls)
        elif cls.name != "Biseparable":
            assert fts_to_state(x) == representative(cls)
        else:
            assert fts_rank(x) == 2


def test_inconsistent_biseparable_raises():
    from qubitfts.classify import _separated_from_ranks
    with pytest.raises(InvariantViolation):
        _separated_from_ranks((1, 1, 2))


def test_random_dense_states_are_nonzero():
    rng = random.Random(13)
    assert all(not random_dense_state(rng).is_null() for _ in range(20))
