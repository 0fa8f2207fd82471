"""Command-line front end.

Subcommands: `sat`, `contains`, `validate` (decision problems), `emit`
(write the TPTP problem without running a prover), and `oracle` (direct
validation without any logic translation).

Exit codes: 0 for a positive verdict (Satisfiable / Contained /
Conforms), 1 for the negative counterpart, 2 when the prover could not
decide, 64 for usage errors, 65 for unreadable or malformed input, 69
when no prover is available, 70 for a prover protocol failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import decide, oracle, shapes
from .decide import DecisionTask, ProverConfig, TaskKind, Verdict, POSITIVE_VERDICTS
from .errors import (
    InvalidOptions, ProverNotFound, ProverProtocolError, Shacl2FolError,
)
from .rdf import iri, parse_file
from .tptp import Dialect, EmitOptions, StarMode, UnaMode

EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_NO_PROVER = 69
EXIT_PROTOCOL = 70


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(sp: argparse.ArgumentParser, with_prover: bool = True):
    sp.add_argument("--una", choices=["pairwise", "distinct"], default=None,
                    help="unique-name encoding (default: distinct for tff, "
                    "pairwise for fof)")
    sp.add_argument("--dialect", choices=["fof", "tff"], default="tff")
    sp.add_argument("--star", choices=["approx", "ground"], default="approx",
                    help="zero-or-more path handling (ground: validation only)")
    sp.add_argument("--cardinality-limit", type=int, default=32, metavar="N",
                    help="largest count expanded into explicit witnesses")
    sp.add_argument("--out", metavar="FILE", help="where to write the TPTP problem")
    sp.add_argument("--json", action="store_true", help="machine-readable result")
    if with_prover:
        sp.add_argument("--prover", choices=["auto", "e", "vampire", "builtin", "none"],
                        default="auto")
        sp.add_argument("--prover-path", metavar="EXE",
                        help="prover executable (overrides discovery)")
        sp.add_argument("--timeout", type=float, default=60.0, metavar="SECONDS")


def _strong_sat_arg(sp: argparse.ArgumentParser):
    sp.add_argument("--strong-sat", nargs="?", const="", default=None,
                    metavar="IRI[,IRI...]",
                    help="require the selected shapes (all, when no list is "
                    "given) to have at least one instance")


def build_parser() -> _ArgumentParser:
    ap = _ArgumentParser(
        prog="shacl2fol",
        description="Decide satisfiability, containment, and validation of "
        "SHACL shape graphs through a first-order logic translation.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sat", help="is the shape graph satisfiable?")
    sp.add_argument("shapes", help="shape graph (Turtle or N-Triples)")
    _strong_sat_arg(sp)
    _add_common(sp)

    sp = sub.add_parser("contains", help="does conformance to A imply conformance to B?")
    sp.add_argument("shapes_a")
    sp.add_argument("shapes_b")
    _add_common(sp)

    sp = sub.add_parser("validate", help="does the data graph conform?")
    sp.add_argument("shapes")
    sp.add_argument("data")
    _add_common(sp)

    sp = sub.add_parser("emit", help="write the TPTP problem and stop")
    sp.add_argument("task", choices=["sat", "contains", "validate"])
    sp.add_argument("files", nargs="+", metavar="FILE")
    _strong_sat_arg(sp)
    _add_common(sp, with_prover=False)

    sp = sub.add_parser("oracle", help="validate directly, without translation")
    sp.add_argument("shapes")
    sp.add_argument("data")
    sp.add_argument("--json", action="store_true")
    return ap


def _options(args) -> EmitOptions:
    dialect = Dialect.FOF if args.dialect == "fof" else Dialect.TFF
    if args.una is None:
        una = UnaMode.PAIRWISE if dialect is Dialect.FOF else UnaMode.DISTINCT
    else:
        una = UnaMode.PAIRWISE if args.una == "pairwise" else UnaMode.DISTINCT
    star = StarMode.APPROXIMATE if args.star == "approx" else StarMode.GROUNDED
    return EmitOptions(una_mode=una, dialect=dialect, star_mode=star,
                       cardinality_limit=args.cardinality_limit)


def _strong_sat(args) -> Optional[list]:
    raw = getattr(args, "strong_sat", None)
    if raw is None:
        return None
    if raw == "":
        return []
    return [iri(s.strip()) for s in raw.split(",") if s.strip()]


def _load_shapes(path: str) -> shapes.ShapeGraph:
    return shapes.extract_shape_graph(parse_file(path))


def _build_task(kind: TaskKind, args, prover: ProverConfig) -> DecisionTask:
    if kind is TaskKind.SATISFIABILITY:
        return DecisionTask(
            kind, _load_shapes(args.shapes), options=_options(args),
            strong_sat_shapes=_strong_sat(args), prover=prover,
            problem_path=args.out,
        )
    if kind is TaskKind.CONTAINMENT:
        return DecisionTask(
            kind, _load_shapes(args.shapes_a),
            shape_graph_b=_load_shapes(args.shapes_b),
            options=_options(args), prover=prover, problem_path=args.out,
        )
    return DecisionTask(
        kind, _load_shapes(args.shapes), data_graph=parse_file(args.data),
        options=_options(args), prover=prover, problem_path=args.out,
    )


_COMMAND_KINDS = {
    "sat": TaskKind.SATISFIABILITY,
    "contains": TaskKind.CONTAINMENT,
    "validate": TaskKind.VALIDATION,
}


def _run_decision(args) -> int:
    prover = ProverConfig(
        kind=args.prover, executable=args.prover_path, timeout_s=args.timeout,
    )
    task = _build_task(_COMMAND_KINDS[args.command], args, prover)
    result = decide.run_task(task)
    if args.json:
        print(json.dumps(result.as_dict(), indent=2))
    else:
        note = " (approximate)" if result.approximate else ""
        print(f"{result.verdict.value}{note}")
        print(f"  szs: {result.szs_status}  prover: {result.prover_kind}  "
              f"time: {result.prover_time_ms} ms")
        print(f"  problem: {result.problem_file}")
    if result.verdict is Verdict.UNKNOWN:
        return EXIT_UNKNOWN
    return EXIT_POSITIVE if result.verdict in POSITIVE_VERDICTS else EXIT_NEGATIVE


def _run_emit(args) -> int:
    kind = _COMMAND_KINDS[args.task]
    expected = {TaskKind.SATISFIABILITY: 1, TaskKind.CONTAINMENT: 2,
                TaskKind.VALIDATION: 2}[kind]
    if len(args.files) != expected:
        raise InvalidOptions(
            f"emit {args.task} expects {expected} file(s), got {len(args.files)}"
        )
    ns = argparse.Namespace(**vars(args))
    if kind is TaskKind.SATISFIABILITY:
        ns.shapes = args.files[0]
    elif kind is TaskKind.CONTAINMENT:
        ns.shapes_a, ns.shapes_b = args.files
    else:
        ns.shapes, ns.data = args.files
    task = _build_task(kind, ns, ProverConfig("none"))
    doc = decide.build_problem(task)
    path = decide.write_problem(doc, args.out)
    if args.json:
        print(json.dumps({"problemFile": path, "approximate": doc.approximate}))
    else:
        print(path)
    return EXIT_POSITIVE


def _run_oracle(args) -> int:
    sg = _load_shapes(args.shapes)
    g = parse_file(args.data)
    report = oracle.evaluate(sg, g)
    if args.json:
        print(json.dumps({
            "conforms": report.conforms,
            "violations": [
                {"shape": v.shape_name.lexical, "focusNode": v.focus_node.lexical}
                for v in report.violations
            ],
        }, indent=2))
    else:
        print("Conforms" if report.conforms else "DoesNotConform")
        for v in report.violations:
            print(f"  {v.focus_node} violates {v.shape_name}")
    return EXIT_POSITIVE if report.conforms else EXIT_NEGATIVE


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "emit":
            return _run_emit(args)
        if args.command == "oracle":
            return _run_oracle(args)
        return _run_decision(args)
    except ProverNotFound as exc:
        print(f"shacl2fol: prover not found: {exc}", file=sys.stderr)
        return EXIT_NO_PROVER
    except ProverProtocolError as exc:
        print(f"shacl2fol: prover protocol error: {exc}", file=sys.stderr)
        return EXIT_PROTOCOL
    except InvalidOptions as exc:
        print(f"shacl2fol: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, Shacl2FolError) as exc:
        print(f"shacl2fol: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
