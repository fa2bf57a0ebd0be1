"""Run the acceptance corpus and print one PASS/FAIL line per criterion.

    python3 scripts/run_acceptance.py [--seed 0] [--only 1,4,10] [--optional-heavy] [--json out.json]
"""
import argparse
import json
import sys

from discdet.corpus import run_acceptance


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--only", help="comma-separated criterion numbers")
    ap.add_argument("--optional-heavy", action="store_true",
                    help="also run a cubic surface over F_3 with counts through F_(3^6)")
    ap.add_argument("--json", help="write the full results here")
    args = ap.parse_args()
    only = [int(x) for x in args.only.split(",")] if args.only else None
    results = run_acceptance(args.seed, only, args.optional_heavy)
    for r in results:
        print(r.line())
    total = sum(r.seconds for r in results)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed in {total:.1f} s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.as_dict() for r in results], fh, indent=2)
    sys.exit(0 if passed == len(results) else 1)


if __name__ == "__main__":
    main()
