"""Command-line driver.

Subcommands mirror the pipeline stages: parse, skolemize, compile, witness,
verify, search, roundtrip.  Exit codes: 0 success (member / verified / found),
1 verified non-member within bounds or failed verification, 2 inconclusive,
64 usage error, 65 parse or input-format error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import serialize
from .dioph import DiophEquation, EquationError, parse_equation, render_equation
from .reduction import ADD, MUL, block_table, compile_instance
from .skolem import SkolemError, lift_solution, normalize_equation, render_normalized
from .witness import (
    DEFAULT_STATE_CAP,
    WitnessError,
    bounded_membership_search,
    build_witness,
    reduction_roundtrip,
    verify_witness,
)

EXIT_OK = 0
EXIT_NO = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64
EXIT_PARSE = 65


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="heismem", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="echo the canonical form of an equation")
    p.add_argument("equation")

    p = sub.add_parser("skolemize", help="print the normalized Skolem system")
    p.add_argument("equation")
    p.add_argument("--nonneg", action="store_true",
                   help="read the equation over nonnegative integers (skip variable splitting)")

    p = sub.add_parser("compile", help="compile an equation to a membership instance")
    p.add_argument("equation")
    p.add_argument("--nonneg", action="store_true")
    p.add_argument("-o", "--output", help="write instance JSON to this path")
    p.add_argument("--table", action="store_true", help="also print per-block tables")

    p = sub.add_parser("witness", help="build a witness from an integer solution")
    p.add_argument("equation")
    p.add_argument("assignment", help='JSON object, e.g. \'{"x": 2, "y": 3}\'')
    p.add_argument("-o", "--output", help="write witness JSON to this path")
    p.add_argument("--instance-out", help="also write the compiled instance JSON")

    p = sub.add_parser("verify", help="check a witness file against an instance file")
    p.add_argument("instance")
    p.add_argument("witness")
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("search", help="bounded breadth-first membership search")
    p.add_argument("instance")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--coord-bound", type=int)
    p.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP)
    p.add_argument("-o", "--output", help="write the found witness JSON to this path")

    p = sub.add_parser("roundtrip", help="full equation-to-membership consistency check")
    p.add_argument("equation")
    p.add_argument("--box", type=int, required=True)
    p.add_argument("--search-len", type=int)
    p.add_argument("--format", choices=("table", "json"), default="table")
    return parser


def _write_or_print(text: str, output: str | None) -> None:
    if output:
        serialize.write_text_atomic(output, text + "\n")
    else:
        print(text)


def _load_instance(path: str):
    return serialize.deserialize_instance(Path(path).read_text())


def _cmd_parse(args) -> int:
    print(render_equation(parse_equation(args.equation)))
    return EXIT_OK


def _cmd_skolemize(args) -> int:
    ns = normalize_equation(parse_equation(args.equation), nonneg=args.nonneg)
    print(render_normalized(ns))
    return EXIT_OK


def _cmd_compile(args) -> int:
    ns = normalize_equation(parse_equation(args.equation), nonneg=args.nonneg)
    inst = compile_instance(ns)
    _write_or_print(serialize.serialize_instance(inst), args.output)
    if args.table and not inst.degenerate:
        for i in range(1, inst.e + 1):
            print(f"\nmul block {i}:")
            print(block_table(inst, MUL, i))
        for j in range(1, inst.d + 1):
            print(f"\nadd block {j}:")
            print(block_table(inst, ADD, j))
    return EXIT_OK


def _cmd_witness(args) -> int:
    eq = parse_equation(args.equation)
    try:
        raw = json.loads(args.assignment)
    except json.JSONDecodeError as exc:
        print(f"invalid assignment JSON: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if not isinstance(raw, dict) or not all(isinstance(v, int) for v in raw.values()):
        print("assignment must map variable names to integers", file=sys.stderr)
        return EXIT_PARSE
    ns = normalize_equation(eq)
    inst = compile_instance(ns)
    lifted = lift_solution(eq, raw, ns)
    word = build_witness(inst, lifted)
    if args.instance_out:
        serialize.write_text_atomic(args.instance_out, serialize.serialize_instance(inst) + "\n")
    _write_or_print(serialize.serialize_witness(word, inst), args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    inst = _load_instance(args.instance)
    word, declared = serialize.deserialize_witness(Path(args.witness).read_text())
    actual = serialize.instance_hash(inst)
    if declared != actual:
        print(f"instance hash mismatch: witness claims {declared}, instance is {actual}",
              file=sys.stderr)
        return EXIT_NO
    report = verify_witness(inst, word)
    if args.format == "json":
        print(json.dumps({
            "ok": report.ok,
            "discrepancies": [
                {"component": entry.component, "provenance": entry.provenance}
                for entry in report.entries
            ],
        }))
    else:
        print(report.render())
    return EXIT_OK if report.ok else EXIT_NO


def _cmd_search(args) -> int:
    inst = _load_instance(args.instance)
    result = bounded_membership_search(
        inst, args.max_len, coord_bound=args.coord_bound, state_cap=args.state_cap
    )
    print(f"status: {result.status} (explored {result.states_explored} states, "
          f"coord bound {result.coord_bound})")
    if result.found:
        names = " ".join(
            f"{inst.generators[i].name}^{m}" if m != 1 else inst.generators[i].name
            for i, m in result.word
        )
        print(f"witness: {names}")
        if args.output:
            serialize.write_text_atomic(
                args.output, serialize.serialize_witness(result.word, inst) + "\n"
            )
        return EXIT_OK
    return EXIT_NO if result.status == "not_found" else EXIT_INCONCLUSIVE


def _cmd_roundtrip(args) -> int:
    report = reduction_roundtrip(args.equation, args.box, search_len=args.search_len)
    if args.format == "json":
        doc = {
            "equation": report.equation,
            "e": report.e, "d": report.d, "q": report.q, "n": report.n,
            "generators": report.generator_count,
            "solvable_in_box": report.solvable_in_box,
            "assignment": report.assignment,
            "witness_length": report.witness.length if report.witness else None,
            "verified": report.verified,
            "status": report.status,
        }
        print(json.dumps(doc))
    else:
        print(report.render())
    if report.status == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_OK if report.ok else EXIT_NO


_COMMANDS = {
    "parse": _cmd_parse,
    "skolemize": _cmd_skolemize,
    "compile": _cmd_compile,
    "witness": _cmd_witness,
    "verify": _cmd_verify,
    "search": _cmd_search,
    "roundtrip": _cmd_roundtrip,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (EquationError, SkolemError, serialize.SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except WitnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())
