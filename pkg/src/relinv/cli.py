"""Command-line driver: ``relinv run``, ``relinv verify`` and ``relinv schema``.

Exit status is 0 on success, 1 when a computation ends in a mathematical
negative result (the report is still written), and 2 on input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import scenario as sc
from .expressions import ExpressionError
from .invariants import GridSpec

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


def parse_grid(text: str) -> GridSpec:
    """``"1,2,3,6:3"`` is denominators 1,2,3,6 with bound 3; the bound part is optional."""
    dens, _, bound = text.partition(":")
    try:
        ds = tuple(int(d) for d in dens.split(",") if d.strip())
        return GridSpec(ds or (1,), int(bound) if bound else 6)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}; expected e.g. 1,2,3,6:3") from None


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def render_text(node, indent: int = 0) -> str:
    """Indented plain-text view of a report tree."""
    pad = "  " * indent
    lines: List[str] = []
    if isinstance(node, dict):
        for k in sorted(node):
            v = node[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(node, list):
        for item in node:
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(node)}")
    return "\n".join(lines)


def _scalar(v) -> str:
    if v is True:
        return "true"
    if v is False:
        return "false"
    if v is None:
        return "null"
    if isinstance(v, (dict, list)):
        return "{}" if isinstance(v, dict) else "[]"
    return str(v)


def _emit(report: dict, fmt: str, out: Optional[str]) -> None:
    text = dumps(report) if fmt == "json" else render_text(report) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_run(args) -> int:
    opts = sc.Options(degree=args.degree, order=args.order, grid=args.grid, seed=args.seed, jobs=args.jobs,
                      skip_heavy=args.skip_heavy)
    data = sc.load(args.scenario)
    report = sc.run(data, opts)
    _emit(report, args.format, args.output)
    return EXIT_OK if report["status"] == "ok" else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    from .suite import run_suite
    overrides = {}
    for item in args.override or []:
        name, sep, expr = item.partition("=")
        if not sep:
            raise sc.ScenarioError(f"--override expects NAME=EXPRESSION, got {item!r}")
        overrides[name.strip()] = expr
    try:
        report = run_suite(args.selector, overrides, seed=args.seed, criteria=args.criterion)
    except ValueError as e:
        raise sc.ScenarioError(str(e)) from None
    _emit(report, args.format, args.output)
    return EXIT_OK if report["status"] == "pass" else EXIT_NEGATIVE


def cmd_schema(args) -> int:
    sys.stdout.write(json.dumps(sc.schema(), indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="relinv", description="Invariant divisors and equivariant line bundles "
                                "of Lie algebras of vector fields, computed exactly.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a scenario file or a bundled scenario by name",
                       epilog="bundled scenarios: " + ", ".join(sc.bundled_names()))
    r.add_argument("scenario", help="path to a scenario JSON file, or a bundled name")
    r.add_argument("--degree", type=int, help="polynomial ansatz degree for cocycle spaces")
    r.add_argument("--order", type=int, help="jet order for searches, weights and orbit ranks")
    r.add_argument("--grid", type=parse_grid, help="weight grid as DENOMINATORS:BOUND, e.g. 1,2,3,6:3")
    r.add_argument("--jobs", type=int, default=1, help="worker processes for grid searches")
    r.add_argument("--skip-heavy", action="store_true", help="skip tasks marked heavy")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="run the acceptance checks on the bundled examples")
    v.add_argument("selector", nargs="?", default="fast", choices=["fast", "heavy", "all"])
    v.add_argument("--criterion", type=int, action="append", help="restrict to one criterion (repeatable)")
    v.add_argument("--override", action="append", metavar="NAME=EXPR",
                   help="replace a named input expression (R2, R5, R7, f1, f2)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("schema", help="print the scenario JSON schema")
    s.set_defaults(func=cmd_schema)

    for q in (r, v):
        q.add_argument("--seed", type=int, default=0, help="seed for random sample points")
        q.add_argument("--format", choices=["json", "text"], default="json")
        q.add_argument("-o", "--output", help="write the report here instead of stdout")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_OK
    if getattr(args, "jobs", 1) < 1:
        print("relinv: --jobs must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (sc.ScenarioError, ExpressionError) as e:
        print(f"relinv: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as e:
        print(f"relinv: invalid input: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
