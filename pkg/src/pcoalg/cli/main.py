"""Command-line front end: ``pcoalg --script FILE [--format human|structured]``."""

from __future__ import annotations

import argparse
import json
import sys

from ..charts import DEFAULT_ORDER
from .script import Options, exit_status, parse_script, run


def format_human(records) -> str:
    lines = []
    for r in records:
        status = r["status"].upper()
        if r["status"] == "value":
            lines.append(f"{r['check']} = {' '.join(_joined(r['residual_terms']))}")
            continue
        line = f"{status:9s} {r['check']}"
        if r["residual_terms"]:
            line += "\n          residual: " + "\n          ".join(r["residual_terms"])
        if r["truncated_flag"]:
            line += "\n          (truncated series involved)"
        lines.append(line)
    checks = [r for r in records if r["status"] != "value"]
    passed = sum(r["status"] == "pass" for r in checks)
    lines.append(f"{passed}/{len(checks)} checks passed")
    return "\n".join(lines)


def _joined(terms):
    out = []
    for i, t in enumerate(terms):
        if i and not t.startswith("-"):
            out.append("+ " + t)
        elif i:
            out.append("- " + t[1:])
        else:
            out.append(t)
    return out


def format_structured(records) -> str:
    return "\n".join(json.dumps(r) for r in records)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pcoalg", description="Run a script of form computations and checks.")
    p.add_argument("--script", help="script file (default: read standard input)")
    p.add_argument("--format", choices=("human", "structured"), default="human")
    p.add_argument("--truncation-order", type=int, default=DEFAULT_ORDER,
                   help="order of truncated delta series (default %(default)s)")
    p.add_argument("--seed", type=int, default=0, help="seed for verify families")
    p.add_argument("--max-terms", type=int, default=None, help="reject larger intermediate expressions")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.truncation_order < 0:
        print("pcoalg: --truncation-order must be non-negative", file=sys.stderr)
        return 2
    if args.script:
        with open(args.script, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    options = Options(order=args.truncation_order, seed=args.seed, max_terms=args.max_terms)
    records = run(parse_script(text), options)
    out = format_structured(records) if args.format == "structured" else format_human(records)
    if out:
        print(out)
    return exit_status(records)


if __name__ == "__main__":
    sys.exit(main())
