#!/usr/bin/env python3
"""Run every built-in worked example and print one line per check.

Usage: python scripts/run_paper_examples.py [--field P|rationals]
"""

import argparse
import sys

from smc_kit.verify import run_paper_examples


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--field", default="32003",
                    help="prime modulus or 'rationals'")
    args = ap.parse_args()
    field = args.field if not args.field.isdigit() else int(args.field)
    reports = run_paper_examples(field)
    for r in reports:
        print(r.line())
    failed = [r for r in reports if not r.passed]
    print(f"\n{len(reports) - len(failed)}/{len(reports)} checks passed "
          f"over field {field}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
