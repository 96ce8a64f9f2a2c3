"""Command-line front end.

Exit codes: 0 success, 1 a mathematical or validation failure, 2 an I/O or
parse failure.  Reports are canonical JSON (sorted keys) so that identical
input, flags and seed give byte-identical output.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Any, Callable

from . import __version__
from .doldkan import ChainComplex, InvalidObject, counit, dold_kan_nerve, nerve_rank_formula, normalized_chains
from .dwyerkan import (
    DuchainComplex,
    classify,
    cyclic_equation_sides,
    dwyer_kan_nerve,
    gen_random_duchain,
    normalized_duchains,
    roundtrip,
)
from .jsonio import (
    EntryTooLarge,
    ParseError,
    chain_to_json,
    dumps,
    duchain_to_json,
    load_any,
    matrix_to_json,
    object_to_json,
)
from .linalg import is_unimodular
from .objects import OutOfTruncation, TruncatedDuplicialGroup, TruncatedSimplicialGroup, ValidationReport, validate

EXIT_OK, EXIT_MATH, EXIT_IO = 0, 1, 2


class MathFailure(Exception):
    """Raised with a partial report when a check fails."""

    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}


def _read_input(path: str) -> tuple[Any, str]:
    try:
        if path == "-":
            raw = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                raw = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        obj = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc
    return obj, hashlib.sha256(raw).hexdigest()


def _failures(report: ValidationReport) -> list[dict]:
    return [
        {"identity": f.identity, "lhs": matrix_to_json(f.lhs), "rhs": matrix_to_json(f.rhs)}
        for f in report.failures
    ]


def _validation(report: ValidationReport) -> dict:
    return {"ok": report.ok, "checked": report.checked, "failures": _failures(report)}


def _require_valid(X: TruncatedSimplicialGroup, out: dict) -> None:
    report = validate(X)
    out["validation"] = _validation(report)
    if not report.ok:
        raise MathFailure(f"object fails {len(report.failures)} identities, first: {report.failures[0].identity}", out)


def _check_complex(B, out: dict) -> None:
    bad = [n for n in range(2, B.trunc + 1) if not (B.d[n - 1] @ B.d[n]).is_zero()]
    if isinstance(B, DuchainComplex):
        bad_delta = [n for n in range(B.trunc - 1) if not (B.delta[n + 1] @ B.delta[n]).is_zero()]
        out["delta_squared_zero_failures"] = bad_delta
    else:
        bad_delta = []
    out["d_squared_zero_failures"] = bad
    if bad or bad_delta:
        raise MathFailure(f"differential does not square to zero (d at {bad}, delta at {bad_delta})", out)


def _chain_of(B) -> ChainComplex:
    return B.chain if isinstance(B, DuchainComplex) else B


def _homology(C: ChainComplex) -> list[dict]:
    return [{"degree": n, "invariant_factors": [str(f) for f in h]} for n, h in enumerate(C.homology())]


def _expect(value, types, what: str):
    if not isinstance(value, types):
        raise MathFailure(f"{what} expected, got {getattr(value, 'kind', type(value).__name__)} input")
    return value


# ---------------------------------------------------------------------------
# commands: each returns the report body or raises


def cmd_chains(args, obj) -> dict:
    X = _expect(load_any(obj), TruncatedSimplicialGroup, "a simplicial or duplicial object")
    out: dict = {}
    _require_valid(X, out)
    C = normalized_chains(X.underlying_simplicial())
    if isinstance(X, TruncatedDuplicialGroup):
        D = normalized_duchains(X, C)
        out["complex"] = duchain_to_json(D.complex)
    else:
        out["complex"] = chain_to_json(C.complex)
    out["ranks"] = list(C.complex.ranks)
    out["homology"] = _homology(C.complex)
    out["inclusions"] = [matrix_to_json(M) for M in C.inclusions]
    return out


def _default_trunc(args, B) -> int:
    if args.trunc is not None:
        return args.trunc
    return B.trunc - 1 if isinstance(B, DuchainComplex) else B.trunc


def cmd_nerve(args, obj) -> dict:
    B = _expect(load_any(obj), (ChainComplex, DuchainComplex), "a chain or duchain complex")
    out: dict = {}
    _check_complex(B, out)
    M = _default_trunc(args, B)
    if M < 0:
        raise MathFailure("nerve truncation must be nonnegative", out)
    if isinstance(B, DuchainComplex):
        if B.trunc < M + 1:
            raise MathFailure(f"duplicial nerve to degree {M} needs the duchain complex to degree {M + 1}, have {B.trunc}", out)
        X = dwyer_kan_nerve(B, M).group
    else:
        if B.trunc < M:
            raise MathFailure(f"nerve to degree {M} needs the complex to degree {M}, have {B.trunc}", out)
        X = dold_kan_nerve(B, M).group
    out["trunc"] = M
    formula = [nerve_rank_formula(B.ranks, n) for n in range(M + 1)]
    out["ranks"] = list(X.ranks)
    out["rank_formula"] = formula
    out["rank_formula_ok"] = list(X.ranks) == formula
    out["object"] = object_to_json(X)
    _require_valid(X, out)
    if not out["rank_formula_ok"]:
        raise MathFailure("nerve ranks disagree with the rank formula", out)
    return out


def _verdicts(cl) -> list[dict]:
    return [
        {
            "degree": v.degree,
            "duplicial": v.duplicial_ok,
            "paracyclic": v.paracyclic_ok,
            "cyclic": v.cyclic_ok,
            "id_minus_d_delta": matrix_to_json(v.id_minus_d_delta),
            "id_minus_delta_d": matrix_to_json(v.id_minus_delta_d),
            "shift_power": matrix_to_json(v.shift_power),
        }
        for v in cl.degrees
    ]


def cmd_classify(args, obj) -> dict:
    A = _expect(load_any(obj), (DuchainComplex, TruncatedDuplicialGroup), "a duchain complex or duplicial object")
    out: dict = {}
    if isinstance(A, DuchainComplex):
        _check_complex(A, out)
        B = A
    else:
        _require_valid(A, out)
        D = normalized_duchains(A)
        B = D.complex
        checks = []
        for n in range(A.trunc):
            lhs, rhs = cyclic_equation_sides(A, n, D)
            entry = {"degree": n, "holds": lhs == rhs}
            if lhs != rhs:
                entry.update(lhs=matrix_to_json(lhs), rhs=matrix_to_json(rhs))
            checks.append(entry)
        out["cyclic_equation"] = checks
        out["shifts_unimodular"] = [is_unimodular(A.shift_matrix(n)) for n in range(A.trunc)]
        if not all(c["holds"] for c in checks):
            raise MathFailure("cyclic equation fails", out)
    cl = classify(B)
    out["scope"] = f"within truncation: degrees 0..{B.trunc - 1}"
    out["degrees"] = _verdicts(cl)
    out["duplicial"] = cl.duplicial_ok
    out["paracyclic"] = cl.paracyclic_ok
    out["cyclic"] = cl.cyclic_ok
    return out


def cmd_homology(args, obj) -> dict:
    A = load_any(obj)
    out: dict = {}
    if isinstance(A, TruncatedSimplicialGroup):
        _require_valid(A, out)
        C = normalized_chains(A.underlying_simplicial()).complex
        out["of"] = "normalized chains"
    else:
        _check_complex(A, out)
        C = _chain_of(A)
        out["of"] = "chain complex"
    out["homology"] = _homology(C)
    return out


def cmd_verify(args, obj) -> dict:
    A = load_any(obj)
    out: dict = {"kind": obj.get("kind")}
    if isinstance(A, TruncatedSimplicialGroup):
        _require_valid(A, out)
    else:
        _check_complex(A, out)
    return out


def _load_or_generate(args, obj):
    if args.gen:
        return gen_random_duchain(args.seed, args.gen_trunc, args.max_rank, args.entry_bound)
    return load_any(obj)


def cmd_roundtrip(args, obj) -> dict:
    B = _expect(_load_or_generate(args, obj), (ChainComplex, DuchainComplex), "a chain or duchain complex")
    out: dict = {}
    if args.gen:
        out["generated"] = duchain_to_json(B)
    _check_complex(B, out)
    M = _default_trunc(args, B)
    if isinstance(B, DuchainComplex):
        if B.trunc < M + 1 or M < 0:
            raise MathFailure(f"roundtrip to degree {M} needs the duchain complex to degree {M + 1}, have {B.trunc}", out)
        r = roundtrip(B, M)
        eps, uni = r.comparisons, r.unimodular
        d_bad, delta_bad = list(r.d_failures), list(r.delta_failures)
    else:
        if B.trunc < M or M < 0:
            raise MathFailure(f"roundtrip to degree {M} needs the complex to degree {M}, have {B.trunc}", out)
        N = dold_kan_nerve(B, M)
        C = normalized_chains(N.group).complex
        eps = counit(B, M, N)
        uni = tuple(is_unimodular(e) for e in eps)
        d_bad = [n for n in range(1, M + 1) if eps[n - 1] @ C.d[n] != B.d[n] @ eps[n]]
        delta_bad = []
    out["trunc"] = M
    out["comparisons"] = [
        {"degree": n, "matrix": matrix_to_json(e), "unimodular": u} for n, (e, u) in enumerate(zip(eps, uni))
    ]
    out["d_intertwining"] = "PASS" if not d_bad else "FAIL"
    out["d_failures"] = d_bad
    if isinstance(B, DuchainComplex):
        out["delta_intertwining"] = "PASS" if not delta_bad else "FAIL"
        out["delta_failures"] = delta_bad
    if not all(uni) or d_bad or delta_bad:
        bad_uni = [n for n, u in enumerate(uni) if not u]
        raise MathFailure(
            f"roundtrip fails (non-unimodular at {bad_uni}, d at {d_bad}, delta at {delta_bad})", out
        )
    return out


def cmd_gen(args, obj) -> dict:
    B = gen_random_duchain(args.seed, args.trunc, args.max_rank, args.entry_bound)
    if args.kind == "chain":
        return {"object": chain_to_json(B.chain)}
    return {"object": duchain_to_json(B)}


COMMANDS: dict[str, Callable] = {
    "chains": cmd_chains,
    "nerve": cmd_nerve,
    "classify": cmd_classify,
    "homology": cmd_homology,
    "verify": cmd_verify,
    "roundtrip": cmd_roundtrip,
    "gen": cmd_gen,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dukan", description="Exact Dold-Kan and Dwyer-Kan computations over Z.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="-", help="output file (default stdout)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input", help="JSON file, or - for stdin")
        return p

    with_input("chains", "normalized (du)chains and homology of a (du)plicial object")
    p = with_input("nerve", "Dold-Kan or Dwyer-Kan nerve of a (du)chain complex")
    p.add_argument("--trunc", type=int, default=None, help="nerve truncation")
    with_input("classify", "paracyclic / cyclic verdicts")
    with_input("homology", "homology invariant factors")
    with_input("verify", "check the defining identities")

    p = sub.add_parser("roundtrip", parents=[common], help="B -> N(B) -> C(N(B)) comparison")
    p.add_argument("input", nargs="?", help="JSON file, or - for stdin; omit with --gen")
    p.add_argument("--trunc", type=int, default=None, help="nerve truncation")
    p.add_argument("--gen", action="store_true", help="use a random duchain complex instead of input")
    p.add_argument("--seed", type=int, default=None, help="seed for --gen")
    p.add_argument("--gen-trunc", type=int, default=5)
    p.add_argument("--max-rank", type=int, default=3)
    p.add_argument("--entry-bound", type=int, default=2)

    p = sub.add_parser("gen", parents=[common], help="random duchain complex")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trunc", type=int, required=True)
    p.add_argument("--max-rank", type=int, default=3)
    p.add_argument("--entry-bound", type=int, default=2)
    p.add_argument("--kind", choices=("duchain", "chain"), default="duchain")
    return parser


def _to_text(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True, separators=(",", ":"))
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def _emit(report: dict, args) -> int:
    text = dumps(report) if args.format == "json" else _to_text(report)
    try:
        if args.out == "-":
            sys.stdout.write(text)
        else:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"dukan: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO
    return report["exit"]


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_IO
    report: dict = {"command": args.command, "argv": list(argv) if argv is not None else sys.argv[1:]}
    obj = None
    digest = None
    try:
        if args.command == "roundtrip":
            if args.gen:
                if args.seed is None:
                    raise ParseError("--gen requires --seed")
            elif args.input is None:
                raise ParseError("roundtrip needs an input file or --gen")
            else:
                obj, digest = _read_input(args.input)
        elif args.command != "gen":
            obj, digest = _read_input(args.input)
        report["input_sha256"] = digest
        body = COMMANDS[args.command](args, obj)
        report.update(body)
        report.update(status="ok", exit=EXIT_OK)
    except ParseError as exc:
        print(f"dukan: {exc}", file=sys.stderr)
        report.update(status="error", error=str(exc), exit=EXIT_IO)
    except MathFailure as exc:
        print(f"dukan: {exc}", file=sys.stderr)
        report.update(exc.report)
        report.update(status="fail", error=str(exc), exit=EXIT_MATH)
    except (EntryTooLarge, InvalidObject, OutOfTruncation, ValueError) as exc:
        print(f"dukan: {exc}", file=sys.stderr)
        report.update(status="fail", error=str(exc), exit=EXIT_MATH)
    return _emit(report, args)


if __name__ == "__main__":
    sys.exit(main())
