"""Command-line front end.

Exit codes: 0 success, 1 negative verdict (not a foundation set, no
refinement), 2 graph parse error, 3 unsupported assignment, 4 literal or set
parse error, 5 graph/monoid mismatch, 6 unknown verdict, 7 suite failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import boundary, io, scale, structure, suites, traces
from .errors import GraphMismatch, ParseError, SpecMismatch, UnknownVertex, Unsupported
from .graph import is_coconnected

EXIT_OK, EXIT_NEGATIVE, EXIT_PARSE, EXIT_UNSUPPORTED = 0, 1, 2, 3
EXIT_LITERAL, EXIT_MISMATCH, EXIT_UNKNOWN, EXIT_SUITE = 4, 5, 6, 7


@dataclass
class RunReport:
    command: list
    graph: Optional[dict] = None
    verdicts: dict = field(default_factory=dict)
    timing: float = 0.0
    exit_code: int = 0

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "graph": self.graph,
                "verdicts": self.verdicts,
                "timing": round(self.timing, 6),
                "exit_code": self.exit_code,
            },
            indent=2,
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        d = json.loads(text)
        return cls(d["command"], d.get("graph"), d["verdicts"], d.get("timing", 0.0), d.get("exit_code", 0))

    def to_text(self) -> str:
        lines = []
        for key, val in self.verdicts.items():
            lines.append(f"{key}: {_flat(val)}")
        return "\n".join(lines)


def _flat(val) -> str:
    if isinstance(val, dict):
        return ", ".join(f"{k}={_flat(v)}" for k, v in val.items())
    if isinstance(val, list):
        return "[" + "; ".join(_flat(v) for v in val) + "]"
    return str(val)


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load_graph(source: str):
    try:
        return io.load_graph(source)
    except ParseError as exc:
        raise _Exit(EXIT_PARSE, f"graph: {exc}") from None


def _parse(g, literal: str):
    try:
        return io.parse_trace(g, literal)
    except (ParseError, UnknownVertex) as exc:
        raise _Exit(EXIT_LITERAL, f"literal: {exc}") from None
    except (SpecMismatch, GraphMismatch) as exc:
        raise _Exit(EXIT_MISMATCH, f"mismatch: {exc}") from None


def _load_set(g, source: str):
    text = source if source.lstrip().startswith("[") else None
    try:
        if text is None:
            text = Path(source).read_text()
        return io.loads_trace_set(g, text)
    except OSError as exc:
        raise _Exit(EXIT_LITERAL, f"set: cannot read {source}: {exc.strerror}") from None
    except (ParseError, UnknownVertex) as exc:
        raise _Exit(EXIT_LITERAL, f"set: {exc}") from None


def _bound(arg: Optional[int]) -> Optional[int]:
    if arg is not None:
        return arg
    env = os.environ.get("GP_BOUND")
    if env:
        try:
            return int(env)
        except ValueError:
            raise _Exit(EXIT_PARSE, f"GP_BOUND must be an integer, got {env!r}") from None
    return None


# -- commands --------------------------------------------------------------

def cmd_analyze(args, report: RunReport):
    g = _load_graph(args.graph)
    report.graph = g.summary()
    d = g.decomposition
    report.verdicts["coconnected"] = is_coconnected(g)
    report.verdicts["components"] = [sorted(c) for c in d.components]
    report.verdicts["universal_vertices"] = sorted(d.universal_vertices)
    report.verdicts["structure"] = structure.structure_report(g).as_dict()
    report.verdicts["ar"] = boundary.has_property_ar(g).as_dict()
    try:
        gs = scale.generalised_scale(g)
    except Unsupported as exc:
        report.verdicts["scale"] = {"status": "UNSUPPORTED", "reason": str(exc)}
        report.verdicts["admissible"] = {"status": "UNSUPPORTED"}
        return EXIT_UNSUPPORTED
    report.verdicts["scale"] = gs.as_dict()
    report.verdicts["admissible"] = scale.is_admissible(g).as_dict()
    return EXIT_OK


def cmd_trace(args, report: RunReport):
    g = _load_graph(args.graph)
    report.graph = g.summary()
    ts = [_parse(g, lit) for lit in args.literals]
    op = args.op
    try:
        if op == "nf":
            out = [t.literal() for t in ts]
        elif op == "mul":
            out = traces.product(g, ts).literal()
        elif op in ("lcm", "orth"):
            if len(ts) != 2:
                raise _Exit(EXIT_LITERAL, f"{op} takes exactly two literals")
            r = traces.right_lcm(ts[0], ts[1])
            if op == "lcm":
                out = "ORTHOGONAL" if r.orthogonal else r.lcm.literal()
            else:
                out = "ORTHOGONAL" if r.orthogonal else "NOT_ORTHOGONAL"
        elif op == "len":
            out = [traces.length(t) for t in ts]
        elif op == "core":
            out = [structure.is_core(t) for t in ts]
        else:
            out = [structure.is_core_irreducible(t) for t in ts]
    except (GraphMismatch, SpecMismatch) as exc:
        raise _Exit(EXIT_MISMATCH, f"mismatch: {exc}") from None
    if isinstance(out, list) and len(out) == 1:
        out = out[0]
    report.verdicts[op] = out
    return EXIT_OK


def cmd_foundation(args, report: RunReport):
    g = _load_graph(args.graph)
    report.graph = g.summary()
    cand = boundary.FoundationCandidate.of(_load_set(g, args.set), g)
    bound = _bound(args.bound)
    report.verdicts["set"] = cand.literals()
    report.verdicts["bound"] = bound if bound is not None else boundary.default_bound(cand)
    verdict = boundary.is_foundation_set(cand, bound)
    report.verdicts["foundation"] = verdict.as_dict()
    status = verdict.status
    if args.mode == "check":
        return {boundary.Status.FOUNDATION: EXIT_OK, boundary.Status.NOT_FOUNDATION: EXIT_NEGATIVE}.get(status, EXIT_UNKNOWN)
    if args.mode == "witness":
        if status is boundary.Status.NOT_FOUNDATION:
            report.verdicts["witness"] = verdict.witness.literal()
            return EXIT_OK
        report.verdicts["witness"] = "NONE"
        return EXIT_NEGATIVE if status is boundary.Status.FOUNDATION else EXIT_UNKNOWN
    if status is not boundary.Status.FOUNDATION:
        report.verdicts["refinement"] = "NONE"
        return EXIT_NEGATIVE if status is boundary.Status.NOT_FOUNDATION else EXIT_UNKNOWN
    r = boundary.refine(cand, bound)
    report.verdicts["method"] = r.method
    if r.refinement is None:
        report.verdicts["refinement"] = "NONE"
        return EXIT_NEGATIVE
    report.verdicts["refinement"] = r.refinement.literals()
    return EXIT_OK


def cmd_verify(args, report: RunReport):
    if args.graph:
        graphs = [_load_graph(args.graph)]
        report.graph = graphs[0].summary()
    else:
        graphs = [io.builtin_graph(n) for n in io.BUILTIN_GRAPHS]
    names = args.suite or ["all"]
    if args.budget == "zero":
        print("warning: budget zero, no cases executed", file=sys.stderr)
    results = suites.run_suites(names, graphs, args.budget, args.seed)
    for r in results:
        report.verdicts[r.name] = r.as_dict()
    return EXIT_OK if all(r.passed for r in results) else EXIT_SUITE


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphprod", description="Graph products of right LCM monoids.")
    p.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="structure, property (AR), scale and admissibility")
    a.add_argument("graph", help="graph file or built-in name (P3, P4, C4, K3, G5)")
    a.set_defaults(func=cmd_analyze)

    t = sub.add_parser("trace", help="trace queries")
    t.add_argument("op", choices=["nf", "mul", "lcm", "orth", "len", "core", "ci"])
    t.add_argument("graph")
    t.add_argument("literals", nargs="+", help='trace literals such as "v1 v2:3"')
    t.set_defaults(func=cmd_trace)

    f = sub.add_parser("foundation", help="foundation-set check, refinement and witnesses")
    f.add_argument("mode", choices=["check", "refine", "witness"])
    f.add_argument("graph")
    f.add_argument("set", help="JSON file with a list of trace literals, or the list itself")
    f.add_argument("--bound", type=int, default=None, help="search bound (default: GP_BOUND or a size-based bound)")
    f.set_defaults(func=cmd_foundation)

    v = sub.add_parser("verify", help="run oracle and property suites")
    v.add_argument("graph", nargs="?", default=None)
    v.add_argument("--suite", action="append", choices=["all", *suites.SUITES], help="repeatable; default all")
    v.add_argument("--budget", choices=suites.BUDGETS, default="small")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    report = RunReport(command=argv)
    start = time.perf_counter()
    try:
        code = args.func(args, report)
    except _Exit as exc:
        code = exc.code
        report.verdicts["error"] = str(exc)
    report.timing = time.perf_counter() - start
    report.exit_code = code
    if args.json:
        print(report.to_json())
    elif "error" in report.verdicts:
        print(f"error: {report.verdicts['error']}", file=sys.stderr)
    elif args.command == "trace":
        out = report.verdicts[args.op]
        print("\n".join(str(x) for x in out) if isinstance(out, list) else out)
    else:
        print(report.to_text())
    return code


if __name__ == "__main__":
    sys.exit(main())
