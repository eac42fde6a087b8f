"""Command line entry point.

    helixgeom run scenario.yaml [--out report.json] [--csv DIR] [--tol name=value ...]
    helixgeom demo example_3_2 [same options]
    helixgeom catalog
    helixgeom show example_3_2

Relative ``--out``/``--csv`` paths are resolved against ``$HELIXGEOM_OUTPUT_DIR``
when it is set.  Exit codes: 0 all PASS, 2 any other verdict, 3 any
THEOREM-VIOLATION, 4 invalid scenario or arguments.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

import yaml

from .catalog import builtin_scenario, catalog
from .errors import ScenarioError
from .report import EXIT_INVALID, RunReport
from .runner import run_scenario
from .scenario import load_document, parse_tolerance, validate

log = logging.getLogger("helixgeom")
OUTPUT_ENV = "HELIXGEOM_OUTPUT_DIR"


def _resolve(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    base = os.environ.get(OUTPUT_ENV)
    return Path(base) / p if base and not p.is_absolute() else p


def _fmt_payload(payload: dict) -> str:
    parts = []
    for k, v in payload.items():
        parts.append(f"{k}=null" if v is None else f"{k}={v:.10g}")
    return " ".join(parts)


def summarize(report: RunReport) -> str:
    width = max(len(c.name) for c in report.checks)
    lines = [f"scenario {report.scenario} (helixgeom {report.version})"]
    for c in report.checks:
        line = f"  {c.name:<{width}}  {c.verdict.value:<17} {_fmt_payload(c.payload)}"
        if c.flags:
            line += f"  [{', '.join(c.flags)}]"
        if c.message:
            line += f"  -- {c.message}"
        lines.append(line)
    lines.append(f"  exit code {report.exit_code()}, {report.timing.get('total', 0.0):.3f} s")
    return "\n".join(lines)


def _execute(doc: dict, args) -> int:
    try:
        overrides = dict(parse_tolerance(t) for t in args.tol)
        sc = validate(doc, overrides)
    except ScenarioError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"invalid tolerance override: {exc}", file=sys.stderr)
        return EXIT_INVALID
    report = run_scenario(sc)
    print(summarize(report))
    out = _resolve(args.out)
    if out is not None:
        report.write_json(out)
        log.info("wrote %s", out)
    csv_dir = _resolve(args.csv)
    if csv_dir is not None:
        written = report.write_csv(csv_dir)
        if not args.no_plots:
            from .plotting import plot_report

            written += plot_report(report, csv_dir)
        log.info("wrote %d files to %s", len(written), csv_dir)
    return report.exit_code()


def _cmd_run(args) -> int:
    try:
        doc = load_document(args.scenario)
    except ScenarioError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"cannot read scenario: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return _execute(doc, args)


def _cmd_demo(args) -> int:
    try:
        doc = builtin_scenario(args.name)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return EXIT_INVALID
    return _execute(doc, args)


def _cmd_catalog(args) -> int:
    entries = catalog()
    width = max(len(n) for n, _ in entries)
    for name, desc in entries:
        print(f"{name:<{width}}  {desc}")
    return 0


def _cmd_show(args) -> int:
    try:
        doc = builtin_scenario(args.name)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return EXIT_INVALID
    print(yaml.safe_dump(doc, sort_keys=False, default_flow_style=None), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="helixgeom", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log written files")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_opts(p):
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--csv", help="directory for per-check CSV tables and PNG figures")
        p.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                       help="override a tolerance (constancy, identity, linearity, parallel, "
                            "residual, reference, kappa_min); repeatable")
        p.add_argument("--no-plots", action="store_true", help="skip PNG figures")

    p_run = sub.add_parser("run", help="run a scenario file (YAML or JSON)")
    p_run.add_argument("scenario")
    add_output_opts(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_demo = sub.add_parser("demo", help="run a builtin scenario")
    p_demo.add_argument("name")
    add_output_opts(p_demo)
    p_demo.set_defaults(func=_cmd_demo)

    p_cat = sub.add_parser("catalog", help="list builtin scenarios")
    p_cat.set_defaults(func=_cmd_catalog)

    p_show = sub.add_parser("show", help="print a builtin scenario as YAML")
    p_show.add_argument("name")
    p_show.set_defaults(func=_cmd_show)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
