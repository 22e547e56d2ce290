"""Command-line driver: classify | scan | transform | solve.

Exit codes: classify maps its verdict to 0 (polynomial-only),
1 (constant-division-only), or 2 (non-constant-division); other
commands use 0 for success.  Unparseable input exits 65 and any
other failure exits 70, on every command.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .analyzer import DivisorKind, FragmentLabel, classify_script, collect_divisions
from .encoder import IntFormula, encode_integer_formula, encode_via_div0
from .errors import NradivError, ScriptError
from .evaluator import brute_force_int_sat
from .parser import parse_script
from .passes import TotalizeConfig, TotalizeStyle, lift_to_uf, totalize
from .printer import print_script
from .report import render_report, scan_directory
from .solver import run_solver
from .terms import Script, count_nodes

EXIT_PARSE_ERROR = 65
EXIT_INTERNAL_ERROR = 70

_VERDICT_EXIT = {
    FragmentLabel.POLYNOMIAL_ONLY: 0,
    FragmentLabel.CONSTANT_DIVISION_ONLY: 1,
    FragmentLabel.NON_CONSTANT_DIVISION: 2,
}


def _read(path: str) -> str:
    return Path(path).read_text()


def _write_output(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _occurrence_line(occ) -> str:
    kind = occ.divisor_class.kind
    detail = str(kind)
    if kind is DivisorKind.CONSTANT_NONZERO:
        detail += f" (value {occ.divisor_class.value})"
    if occ.under_quantifier:
        detail += ", under a quantifier"
    return f"  line {occ.loc.line} col {occ.loc.col}: {detail}"


def cmd_classify(args: argparse.Namespace) -> int:
    script = parse_script(_read(args.path))
    verdict = classify_script(script)
    if args.json:
        payload = {
            "path": args.path,
            "verdict": verdict.label.value,
            "occurrences": [
                {
                    "line": occ.loc.line,
                    "col": occ.loc.col,
                    "class": occ.divisor_class.kind.value,
                    "value": None
                    if occ.divisor_class.value is None
                    else str(occ.divisor_class.value),
                    "under_quantifier": occ.under_quantifier,
                }
                for occ in verdict.occurrences
            ],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"{args.path}: {verdict.label}")
        for occ in verdict.occurrences:
            print(_occurrence_line(occ))
    return _VERDICT_EXIT[verdict.label]


def cmd_scan(args: argparse.Namespace) -> int:
    root = Path(args.directory)
    if not root.is_dir():
        raise NradivError(f"not a directory: {root}")
    _write_output(render_report(scan_directory(root)), args.output)
    return 0


def _count_divisions(script: Script) -> int:
    return len(collect_divisions(script))


def _script_nodes(script: Script) -> int:
    return sum(count_nodes(a) for a in script.assertions)


def cmd_transform(args: argparse.Namespace) -> int:
    script = parse_script(_read(args.path))
    notes: list[str] = []

    if args.transform_pass == "totalize":
        try:
            value = Fraction(args.div0_value)
        except (ValueError, ZeroDivisionError) as exc:
            raise NradivError(f"bad --div0-value {args.div0_value!r}: {exc}") from exc
        cfg = TotalizeConfig(div0_value=value, style=TotalizeStyle(args.style))
        out_script = totalize(script, cfg, fold=args.fold)
    elif args.transform_pass == "uf-lift":
        result = lift_to_uf(script)
        out_script = result.script
        if result.div_symbol is None:
            notes.append("no division to lift")
        else:
            notes.append(f"division symbol {result.div_symbol}")
            notes.append(f"logic {script.logic} -> {out_script.logic}")
    else:  # encode-uf | encode-div0
        formula = IntFormula.from_script(script)
        encode = (
            encode_integer_formula
            if args.transform_pass == "encode-uf"
            else encode_via_div0
        )
        out_script = encode(formula).script
        if args.bound is not None:
            witness = brute_force_int_sat(formula, args.bound)
            if witness is None:
                notes.append(f"no integer witness with |values| <= {args.bound}")
            else:
                rendered = ", ".join(f"{k} = {v}" for k, v in witness.items())
                notes.append(f"integer witness within {args.bound}: {rendered}")

    _write_output(print_script(out_script), args.output)
    summary = (
        f"[{args.transform_pass}] nodes {_script_nodes(script)} -> {_script_nodes(out_script)}; "
        f"divisions {_count_divisions(script)} -> {_count_divisions(out_script)}"
    )
    for note in notes:
        summary += f"; {note}"
    print(summary, file=sys.stderr)
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    verdict = run_solver(_read(args.path), args.solver, timeout=args.timeout)
    print(f"{verdict.answer} ({verdict.elapsed:.3f}s)")
    if verdict.answer == "error":
        sys.stderr.write(verdict.raw_output)
        return EXIT_INTERNAL_ERROR
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nradiv",
        description="Analyze and repair division in SMT-LIB nonlinear arithmetic scripts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser(
        "classify", help="report the division fragment of one script"
    )
    p_classify.add_argument("path")
    p_classify.add_argument("--json", action="store_true", help="structured output")
    p_classify.set_defaults(func=cmd_classify)

    p_scan = sub.add_parser("scan", help="classify every .smt2 file under a directory")
    p_scan.add_argument("directory")
    p_scan.add_argument("--output", "-o", help="write the JSON report here")
    p_scan.set_defaults(func=cmd_scan)

    p_transform = sub.add_parser("transform", help="rewrite a script and print it")
    p_transform.add_argument(
        "transform_pass",
        metavar="pass",
        choices=("totalize", "uf-lift", "encode-uf", "encode-div0"),
    )
    p_transform.add_argument("path")
    p_transform.add_argument(
        "--div0-value",
        default="0",
        help="totalize: value of x/0, as an exact rational (default 0)",
    )
    p_transform.add_argument(
        "--style",
        choices=tuple(s.value for s in TotalizeStyle),
        default=TotalizeStyle.BRANCH_INLINE.value,
        help="totalize: inline branch or fresh defined symbol",
    )
    p_transform.add_argument(
        "--fold", action="store_true", help="constant-fold the result"
    )
    p_transform.add_argument(
        "--bound",
        type=int,
        help="encode-*: also report a brute-force integer witness within this bound",
    )
    p_transform.add_argument("--output", "-o", help="write the script here, not stdout")
    p_transform.set_defaults(func=cmd_transform)

    p_solve = sub.add_parser("solve", help="pipe a script to an external solver")
    p_solve.add_argument("path")
    p_solve.add_argument(
        "--solver", required=True, help="solver command line, e.g. 'z3 -in'"
    )
    p_solve.add_argument("--timeout", type=float, default=10.0, help="seconds")
    p_solve.set_defaults(func=cmd_solve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScriptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except NradivError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
