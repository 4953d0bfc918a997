"""Command-line front end: one JSON document in, one JSON document out.

State documents look like::

    {"n": 3, "mode": "exact",
     "amplitudes": [{"index": "000", "re": "1/1", "im": "0/1"}, ...]}

Omitted indices are zero and ``im`` may be omitted.  Exact values are
``"p/q"`` strings (bare integers are also accepted); approximate values are
JSON numbers.  Results go to standard output, diagnostics to standard error.
Exit codes: 0 success, 2 bad input or usage, 1 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence, TextIO

from . import game
from .classify import (
    InvariantViolation,
    cayley_hyperdet,
    class_from_name,
    classify,
    fts_to_state,
    local_ranks,
    reduce_canonical,
    representative,
    state_to_fts,
)
from .fts import fts_rank, quartic_norm
from .scalars import ExactComplex, format_rational, parse_rational
from .states import InvalidStateError, QubitState, bits
from .symtensor import (
    bilinear_invariant,
    from_amplitudes,
    front_normalize,
    to_amplitudes,
    two_qubit_reduce,
)

__all__ = ["StateDocumentError", "UsageError", "encode_scalar", "main", "parse_state", "run",
           "state_document"]

TOLERANCE_WARNING = ("approximate input: zero tests use a relative tolerance of 1e-10, "
                     "so the result is tolerance-dependent")


class StateDocumentError(ValueError):
    """A state document failed validation; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class UsageError(Exception):
    def __init__(self, message: str, usage: str):
        super().__init__(message)
        self.usage = usage


# -- state documents ---------------------------------------------------------

def _exact_value(value: Any, field: str):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        if isinstance(value, float):
            raise StateDocumentError(field, f"decimal value {value!r} in exact mode; use a 'p/q' string")
        raise StateDocumentError(field, f"expected a 'p/q' string, got {type(value).__name__}")
    if isinstance(value, int):
        return parse_rational(str(value))
    if any(ch in value for ch in ".eE"):
        raise StateDocumentError(field, f"decimal value {value!r} in exact mode; use a 'p/q' string")
    try:
        return parse_rational(value)
    except ValueError:
        raise StateDocumentError(field, f"malformed rational {value!r}") from None


def _approx_value(value: Any, field: str) -> float:
    if isinstance(value, bool):
        raise StateDocumentError(field, "booleans are not amplitudes")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            pass
        try:
            return float(parse_rational(value))
        except ValueError:
            raise StateDocumentError(field, f"malformed number {value!r}") from None
    raise StateDocumentError(field, f"expected a number, got {type(value).__name__}")


def parse_state(text: str, mode: str | None = None) -> QubitState:
    """Validate a state document; ``mode`` overrides the document's own mode."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateDocumentError("document", f"invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(doc, dict):
        raise StateDocumentError("document", "expected a JSON object")
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int):
        raise StateDocumentError("n", f"expected a positive integer, got {n!r}")
    if n < 1:
        raise StateDocumentError("n", f"expected a positive integer, got {n}")
    if mode is None:
        mode = doc.get("mode")
        if mode not in ("exact", "approx"):
            raise StateDocumentError("mode", f"expected 'exact' or 'approx', got {mode!r}")
    amps = doc.get("amplitudes", [])
    if not isinstance(amps, list):
        raise StateDocumentError("amplitudes", "expected a list of records")

    convert = _exact_value if mode == "exact" else _approx_value
    vec: list = [ExactComplex(0) if mode == "exact" else 0j] * (1 << n)
    seen: set[str] = set()
    for i, rec in enumerate(amps):
        where = f"amplitudes[{i}]"
        if not isinstance(rec, dict):
            raise StateDocumentError(where, "expected an object with index, re, im")
        index = rec.get("index")
        if not isinstance(index, str) or not index or set(index) - {"0", "1"}:
            raise StateDocumentError(f"{where}.index", f"malformed bit-string {index!r}")
        if len(index) != n:
            raise StateDocumentError(f"{where}.index",
                                     f"bit-string {index!r} has length {len(index)} but n = {n}")
        if index in seen:
            raise StateDocumentError(f"{where}.index", f"duplicate index {index!r}")
        seen.add(index)
        if "re" not in rec:
            raise StateDocumentError(f"{where}.re", "missing real part")
        re = convert(rec["re"], f"{where}.re")
        im = convert(rec.get("im", 0), f"{where}.im")
        vec[int(index, 2)] = ExactComplex(re, im) if mode == "exact" else complex(re, im)
    return QubitState.from_vector(vec, n)


def encode_scalar(v):
    """Real values as a bare ``"p/q"`` (or number); complex ones as ``{re, im}``."""
    if isinstance(v, ExactComplex):
        if v.im == 0:
            return format_rational(v.re)
        return {"re": format_rational(v.re), "im": format_rational(v.im)}
    v = complex(v) + 0j   # + 0j folds -0.0 into 0.0
    if v.imag == 0:
        return v.real + 0.0
    return {"re": v.real + 0.0, "im": v.imag + 0.0}


def state_document(s: QubitState) -> dict:
    exact = s.exact
    amps = []
    for i, v in enumerate(s.vector):
        if v == 0:
            continue
        if exact:
            amps.append({"index": bits(i, s.n), "re": format_rational(v.re),
                         "im": format_rational(v.im)})
        else:
            c = complex(v)
            amps.append({"index": bits(i, s.n), "re": c.real, "im": c.imag})
    return {"n": s.n, "mode": "exact" if exact else "approx", "amplitudes": amps}


def _to_approx(s: QubitState) -> QubitState:
    return QubitState.from_vector(s.to_complex(), s.n)


def _transcript(word) -> list[dict]:
    return [{"kind": g.kind, "parameters": [encode_scalar(p) for p in g.parameters()]}
            for g in word]


# -- commands ----------------------------------------------------------------

def _load(args) -> QubitState:
    path = args.file
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise StateDocumentError("file", f"cannot read {path!r}: {exc.strerror}") from None
    return parse_state(text, args.mode)


def _require_n(s: QubitState, n: int):
    if s.n != n:
        raise StateDocumentError("n", f"this command needs n = {n}, got {s.n}")


def _warnings(s: QubitState) -> list[str]:
    return [] if s.exact else [TOLERANCE_WARNING]


def cmd_classify(args) -> dict:
    s = _load(args)
    _require_n(s, 3)
    cls = classify(s)
    x = state_to_fts(s)
    out = {"class": cls.label}
    if cls.name == "Biseparable":
        out["separated_qubit"] = cls.separated
    out.update({
        "rank": cls.rank,
        "quartic_norm": encode_scalar(quartic_norm(x)),
        "hyperdeterminant": encode_scalar(cayley_hyperdet(s)),
        "local_ranks": [0, 0, 0] if cls.name == "Null" else list(local_ranks(s)),
        "warnings": _warnings(s),
    })
    return out


def cmd_reduce(args) -> dict:
    s = _load(args)
    _require_n(s, 3)
    r = reduce_canonical(s)
    if s.exact and r.replay(s) != r.canonical:
        raise InvariantViolation("transcript replay does not reproduce the canonical form")
    return {
        "canonical": state_document(fts_to_state(r.canonical)),
        "transcript": _transcript(r.transcript),
        "rank": r.rank,
        "class": r.cls.label,
        "k": encode_scalar(r.k),
        "warnings": _warnings(s),
    }


def cmd_invariant(args) -> dict:
    s = _load(args)
    if args.which == "bilinear":
        t = from_amplitudes(s)
        value = bilinear_invariant(t, t)
    else:
        _require_n(s, 3)
        value = quartic_norm(state_to_fts(s)) if args.which == "quartic" else cayley_hyperdet(s)
    return {"which": args.which, "value": encode_scalar(value), "warnings": _warnings(s)}


def cmd_rank(args) -> dict:
    s = _load(args)
    _require_n(s, 3)
    return {"rank": fts_rank(state_to_fts(s)), "warnings": _warnings(s)}


def cmd_nqubit(args) -> dict:
    s = _load(args)
    if s.is_null():
        raise StateDocumentError("amplitudes", "cannot normalize the zero state")
    t = from_amplitudes(s)
    if args.action == "reduce2":
        _require_n(s, 2)
        r = two_qubit_reduce(t)
        return {
            "canonical": state_document(to_amplitudes(r.canonical)),
            "transcript": _transcript(r.transcript),
            "k": encode_scalar(r.k),
            "invariant": encode_scalar(r.invariant),
            "warnings": _warnings(s),
        }
    u, word = front_normalize(t)
    return {
        "canonical": state_document(to_amplitudes(u)),
        "transcript": _transcript(word),
        "warnings": _warnings(s),
    }


def _strategy_doc(m: game.MeasurementStrategy) -> dict:
    return {"theta": [list(p) for p in m.theta], "phi": [list(p) for p in m.phi]}


def cmd_game(args) -> dict:
    if args.action == "classical":
        value, maximizers = game.best_classical()
        return {"value": f"{value.numerator}/{value.denominator}",
                "maximizers_count": len(maximizers),
                "strategy": {"a": list(maximizers[0].a), "b": list(maximizers[0].b),
                             "c": list(maximizers[0].c)}}
    if args.action == "quantum":
        if args.file is not None and args.state is not None:
            raise UsageError("give either --state ghz or a file, not both", "")
        state, m = game.ghz_strategy()
        if args.file is not None:
            state = _load(args)
            _require_n(state, 3)
            if state.is_null():
                raise StateDocumentError("amplitudes", "the game needs a nonzero state")
        return {"value": game.quantum_win_probability(state, m), "strategy": _strategy_doc(m)}
    if args.restarts < 1:
        raise StateDocumentError("--restarts", "need at least one restart")
    state = _load(args)
    _require_n(state, 3)
    if state.is_null():
        raise StateDocumentError("amplitudes", "the game needs a nonzero state")
    value, m = game.optimize_strategy(state, restarts=args.restarts, seed=args.seed)
    return {"value": value, "strategy": _strategy_doc(m), "restarts": args.restarts,
            "seed": args.seed}


def cmd_representative(args) -> dict:
    k = None
    if args.k is not None:
        try:
            k = ExactComplex(parse_rational(args.k))
        except ValueError:
            raise StateDocumentError("--k", f"malformed rational {args.k!r}") from None
    try:
        cls = class_from_name(args.cls, k=k)
    except ValueError as exc:
        raise StateDocumentError("--class", str(exc)) from None
    if k is not None and cls.name != "GHZ":
        raise StateDocumentError("--k", "only the GHZ class takes a parameter")
    s = representative(cls)
    if args.mode == "approx":
        s = _to_approx(s)
    return {"class": cls.label, "rank": cls.rank, "state": state_document(s)}


# -- argument parsing --------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, self.format_usage())


def _common() -> argparse.ArgumentParser:
    # repeated on every subparser so the flags may follow the subcommand too
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--mode", choices=("exact", "approx"), default=argparse.SUPPRESS,
                   help="override the document's scalar mode")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", default=argparse.SUPPRESS,
                     help="compact JSON output (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", default=argparse.SUPPRESS,
                     help="indented JSON output")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="qubitfts", parents=[common],
                     description="SLOCC classification, reduction, invariants and the GHZ game.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("classify", parents=[common], help="entanglement class of a 3-qubit state")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("reduce", parents=[common], help="canonical form with its transcript")
    p.add_argument("file")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("invariant", parents=[common], help="quartic, hyperdeterminant or bilinear")
    p.add_argument("file")
    p.add_argument("--which", choices=("quartic", "hyperdet", "bilinear"), required=True)
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("rank", parents=[common], help="FTS rank of a 3-qubit state")
    p.add_argument("file")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("nqubit", parents=[common], help="n-qubit symmetric tensor operations")
    p.add_argument("action", choices=("reduce2", "front"))
    p.add_argument("file")
    p.set_defaults(func=cmd_nqubit)

    p = sub.add_parser("game", parents=[common], help="the three-player parity game")
    gsub = p.add_subparsers(dest="action", metavar="ACTION", parser_class=_Parser)
    gsub.required = True
    g = gsub.add_parser("classical", parents=[common], help="best deterministic strategy")
    g.set_defaults(func=cmd_game)
    g = gsub.add_parser("quantum", parents=[common], help="value of the standard quantum strategy")
    g.add_argument("--state", choices=("ghz",), default=None)
    g.add_argument("file", nargs="?", default=None)
    g.set_defaults(func=cmd_game)
    g = gsub.add_parser("optimize", parents=[common], help="random-restart coordinate ascent")
    g.add_argument("file")
    g.add_argument("--restarts", type=int, default=8)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_game)

    p = sub.add_parser("representative", parents=[common], help="tabulated class representative")
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--k", default=None, help="GHZ parameter as 'p/q'")
    p.set_defaults(func=cmd_representative)
    return parser


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(exc.usage)
        stderr.write(f"error: {exc}\n")
        return 2
    except SystemExit as exc:   # --help
        return int(exc.code or 0)
    args.mode = getattr(args, "mode", None)
    pretty = getattr(args, "pretty", False)

    try:
        result = args.func(args)
    except UsageError as exc:
        stderr.write(parser.format_usage())
        stderr.write(f"error: {exc}\n")
        return 2
    except (StateDocumentError, InvalidStateError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except ArithmeticError as exc:
        stderr.write(f"internal invariant violated: {exc}\n")
        return 1

    echo = [args.command] + ([args.action] if getattr(args, "action", None) else [])
    doc = {"command": " ".join(echo), **result}
    stdout.write(json.dumps(doc, indent=2 if pretty else None) + "\n")
    return 0


def main() -> int:
    return run()
