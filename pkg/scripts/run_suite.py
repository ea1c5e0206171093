#!/usr/bin/env python3
"""Run the seeded property suites and print the JSON report.

Byte-identical output for a fixed (seed, sizes) pair; nonzero exit when any
suite fails.

Usage:
    python scripts/run_suite.py [--seed 42] [--sizes full|small] [--only a,b]
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from modcycles.suites import run_suites  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--sizes", choices=("small", "full"), default="full")
    ap.add_argument("--only", help="comma-separated suite names")
    args = ap.parse_args()
    only = args.only.split(",") if args.only else None
    report = run_suites(args.seed, sizes=args.sizes, only=only)
    print(json.dumps(report, indent=2))
    return 0 if report["all_passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
