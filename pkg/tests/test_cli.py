import io
import json
import math
import subprocess
import sys

import pytest

from qubitfts.classify import classify, state_to_fts
from qubitfts.cli import StateDocumentError, encode_scalar, parse_state, run, state_document
from qubitfts.fts import Phi, Psi, Tau, Zed, apply_word
from qubitfts.jordan import JordanElement
from qubitfts.scalars import exact, parse_rational
from qubitfts.states import QubitState

import oracles


def doc(amps, n=3, mode="exact"):
    return json.dumps({"n": n, "mode": mode, "amplitudes": amps})


def amp(index, re="1/1", im="0/1"):
    return {"index": index, "re": re, "im": im}


GHZ_DOC = doc([amp("000"), amp("111")])


def invoke(argv, tmp_path=None, files=None):
    for name, text in (files or {}).items():
        (tmp_path / name).write_text(text)
        argv = [str(tmp_path / a) if a == name else a for a in argv]
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    body = json.loads(out.getvalue()) if out.getvalue() else None
    return code, body, err.getvalue()


def test_parse_ghz():
    s = parse_state(GHZ_DOC)
    assert s == QubitState(3, {"000": 1, "111": 1}) and s.exact


def test_parse_approx():
    s = parse_state(doc([{"index": "000", "re": 0.5, "im": -0.25}], mode="approx"))
    assert s["000"] == complex(0.5, -0.25) and not s.exact


def test_parse_mode_override_to_approx():
    s = parse_state(GHZ_DOC, mode="approx")
    assert not s.exact and s["111"] == 1 + 0j


def test_parse_empty_is_zero_state():
    s = parse_state(doc([]))
    assert s.is_null() and classify(s).name == "Null"


@pytest.mark.parametrize("text,field,needle", [
    (doc([amp("000"), amp("000")]), "amplitudes[1].index", "'000'"),
    (doc([amp("0a0")]), "amplitudes[0].index", "malformed bit-string"),
    (doc([amp("00")]), "amplitudes[0].index", "n = 3"),
    (doc([amp("000", re="x/2")]), "amplitudes[0].re", "malformed rational"),
    (doc([amp("000", im="1/0")]), "amplitudes[0].im", "malformed rational"),
    (doc([amp("000", re=0.5)]), "amplitudes[0].re", "decimal"),
    (doc([amp("000", re="0.5")]), "amplitudes[0].re", "decimal"),
    (doc([{"index": "000"}]), "amplitudes[0].re", "missing"),
    (json.dumps({"n": 0, "mode": "exact", "amplitudes": []}), "n", "positive"),
    (json.dumps({"n": "3", "mode": "exact", "amplitudes": []}), "n", "positive"),
    (json.dumps({"n": 3, "mode": "fuzzy", "amplitudes": []}), "mode", "fuzzy"),
    (json.dumps({"n": 3, "mode": "exact", "amplitudes": {}}), "amplitudes", "list"),
    ("{not json", "document", "invalid JSON"),
    ("[]", "document", "object"),
    (doc([{"index": "000", "re": "a"}], mode="approx"), "amplitudes[0].re", "malformed number"),
])
def test_parse_errors_name_the_field(text, field, needle):
    with pytest.raises(StateDocumentError) as info:
        parse_state(text)
    assert info.value.field == field
    assert needle in str(info.value)


def test_exact_override_rejects_decimals():
    text = doc([{"index": "000", "re": 0.5, "im": 0}], mode="approx")
    with pytest.raises(StateDocumentError):
        parse_state(text, mode="exact")


def test_encode_scalar():
    assert encode_scalar(exact(-2)) == "-2/1"
    assert encode_scalar(exact(1, 3)) == {"re": "1/1", "im": "3/1"}
    assert encode_scalar(-0.0 + 0j) == 0.0
    assert encode_scalar(1 + 2j) == {"re": 1.0, "im": 2.0}


def test_classify_command(tmp_path):
    code, body, err = invoke(["classify", "g.json"], tmp_path, {"g.json": GHZ_DOC})
    assert code == 0 and err == ""
    assert body["command"] == "classify"
    assert body["class"] == "GHZ" and body["rank"] == 4
    assert body["quartic_norm"] == "-2/1" and body["hyperdeterminant"] == "1/1"
    assert body["local_ranks"] == [2, 2, 2] and body["warnings"] == []


def test_classify_biseparable_and_null(tmp_path):
    code, body, _ = invoke(["classify", "b.json"], tmp_path, {"b.json": doc([amp("111"), amp("010")])})
    assert code == 0 and body["class"] == "B-CA" and body["separated_qubit"] == "B"
    code, body, _ = invoke(["classify", "z.json"], tmp_path, {"z.json": doc([])})
    assert code == 0 and body["class"] == "Null" and body["rank"] == 0


def test_approx_input_warns(tmp_path):
    text = doc([{"index": "001", "re": 1.0}, {"index": "010", "re": 1.0}, {"index": "100", "re": 1.0}],
               mode="approx")
    code, body, _ = invoke(["classify", "w.json"], tmp_path, {"w.json": text})
    assert code == 0 and body["class"] == "W" and body["warnings"]


def test_reduce_round_trip(tmp_path):
    text = doc([amp("000", "3/2", "1/1"), amp("011", "-1/1"), amp("101", "2/3"), amp("111", "1/5")])
    code, body, _ = invoke(["reduce", "s.json"], tmp_path, {"s.json": text})
    assert code == 0
    s = parse_state(text)
    canonical = parse_state(json.dumps(body["canonical"]))
    assert classify(canonical).label == body["class"] == classify(s).label
    assert body["rank"] == classify(s).rank
    x = state_to_fts(canonical)
    assert x.alpha == 1 and x.beta == 0 and not x.B

    # the transcript replays with nothing but the serialized fields
    def scalar(v):
        if isinstance(v, dict):
            return exact(parse_rational(v["re"]), parse_rational(v["im"]))
        return exact(parse_rational(v))

    word = []
    for step in body["transcript"]:
        p = [scalar(v) for v in step["parameters"]]
        word.append({"phi": lambda: Phi(JordanElement(*p)), "psi": lambda: Psi(JordanElement(*p)),
                     "tau": lambda: Tau(*p), "zed": Zed}[step["kind"]]())
    assert apply_word(word, state_to_fts(s)) == x


def test_reduce_zero_is_validation_error(tmp_path):
    code, body, err = invoke(["reduce", "z.json"], tmp_path, {"z.json": doc([])})
    assert code == 2 and body is None and "zero" in err


def test_invariants(tmp_path):
    files = {"g.json": GHZ_DOC, "b.json": doc([amp("00"), amp("11", "3/1")], n=2)}
    # (t, t) vanishes for odd n by antisymmetry
    for which, expected in (("quartic", "-2/1"), ("hyperdet", "1/1"), ("bilinear", "0/1")):
        code, body, _ = invoke(["invariant", "g.json", "--which", which], tmp_path, files)
        assert code == 0 and body["value"] == expected and body["which"] == which
    code, body, _ = invoke(["invariant", "b.json", "--which", "bilinear"], tmp_path, files)
    assert body["value"] == "6/1"
    code, _, err = invoke(["invariant", "b.json", "--which", "quartic"], tmp_path, files)
    assert code == 2 and "n = 3" in err


def test_rank(tmp_path):
    code, body, _ = invoke(["rank", "w.json"], tmp_path,
                           {"w.json": doc([amp("111"), amp("001"), amp("010")])})
    assert code == 0 and body["rank"] == 3


def test_nqubit(tmp_path):
    files = {"b.json": doc([amp("00"), amp("11")], n=2), "f.json": doc([amp("0101"), amp("1000")], n=4)}
    code, body, _ = invoke(["nqubit", "reduce2", "b.json"], tmp_path, files)
    assert code == 0 and body["k"] == "1/1" and body["invariant"] == "2/1"
    code, body, _ = invoke(["nqubit", "front", "f.json"], tmp_path, files)
    assert code == 0 and {"index": "1111", "re": "1/1", "im": "0/1"} in body["canonical"]["amplitudes"]
    code, _, _ = invoke(["nqubit", "reduce2", "f.json"], tmp_path, files)
    assert code == 2


def test_game_commands(tmp_path):
    code, body, _ = invoke(["game", "classical"])
    assert code == 0 and body["value"] == "3/4" and body["maximizers_count"] == 32
    code, body, _ = invoke(["game", "quantum", "--state", "ghz"])
    assert code == 0 and abs(body["value"] - 1) < 1e-12
    code, body, _ = invoke(["game", "quantum", "p.json"], tmp_path, {"p.json": doc([amp("111")])})
    ghz_angles = [[(0.0, 0.0), (math.pi / 4, 0.0)]] * 3
    expected = oracles.game_value([0] * 7 + [1], ghz_angles)
    assert code == 0 and abs(body["value"] - expected) < 1e-12
    code, body, _ = invoke(["game", "optimize", "g.json", "--restarts", "2", "--seed", "3"],
                           tmp_path, {"g.json": GHZ_DOC})
    assert code == 0 and body["value"] >= 1 - 1e-6 and len(body["strategy"]["theta"]) == 3
    code, _, _ = invoke(["game", "optimize", "z.json"], tmp_path, {"z.json": doc([])})
    assert code == 2


def test_representative(tmp_path):
    code, body, _ = invoke(["representative", "--class", "W"])
    assert code == 0
    assert parse_state(json.dumps(body["state"])) == QubitState(3, {"111": 1, "001": 1, "010": 1})
    code, body, _ = invoke(["representative", "--class", "GHZ", "--k", "3/2"])
    assert parse_state(json.dumps(body["state"]))["100"] == exact(parse_rational("3/2"))
    code, body, _ = invoke(["--mode", "approx", "representative", "--class", "A-BC"])
    assert body["state"]["mode"] == "approx"
    for argv in (["representative", "--class", "bell"], ["representative", "--class", "W", "--k", "1"],
                 ["representative", "--class", "GHZ", "--k", "0"],
                 ["representative", "--class", "GHZ", "--k", "0.5"]):
        code, body, err = invoke(argv)
        assert code == 2 and body is None and err


def test_usage_errors():
    for argv in ([], ["bogus"], ["classify"], ["game"], ["classify", "x.json", "--frob"],
                 ["invariant", "x.json", "--which", "cubic"], ["--mode", "sloppy", "game", "classical"]):
        code, body, err = invoke(argv)
        assert code == 2 and body is None and "usage" in err


def test_missing_file():
    code, body, err = invoke(["classify", "/nonexistent/state.json"])
    assert code == 2 and body is None and "file" in err


def test_flags_after_subcommand(tmp_path):
    code, body, _ = invoke(["classify", "g.json", "--mode", "approx"], tmp_path, {"g.json": GHZ_DOC})
    assert code == 0 and body["warnings"]
    out, err = io.StringIO(), io.StringIO()
    assert run(["game", "classical", "--pretty"], stdout=out, stderr=err) == 0
    assert out.getvalue().startswith("{\n  ")


def test_invariant_violation_exit_code(tmp_path, monkeypatch):
    from qubitfts import cli
    from qubitfts.classify import InvariantViolation

    def broken(_):
        raise InvariantViolation("forced")

    monkeypatch.setattr(cli, "classify", broken)
    code, body, err = invoke(["classify", "g.json"], tmp_path, {"g.json": GHZ_DOC})
    assert code == 1 and body is None and "forced" in err


def test_state_document_round_trip():
    s = QubitState(3, {"010": exact(1, -2), "111": 4})
    assert parse_state(json.dumps(state_document(s))) == s


def test_console_entry_point(tmp_path):
    (tmp_path / "g.json").write_text(GHZ_DOC)
    proc = subprocess.run([sys.executable, "-m", "qubitfts", "classify", str(tmp_path / "g.json")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["class"] == "GHZ"
    proc = subprocess.run([sys.executable, "-m", "qubitfts", "nope"], capture_output=True, text=True,
                          check=False)
    assert proc.returncode == 2 and proc.stdout == "" and "usage" in proc.stderr
