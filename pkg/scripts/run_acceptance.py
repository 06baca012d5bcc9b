"""Run the acceptance criteria and print one PASS/FAIL line each."""

import argparse
import sys

from ramcft.acceptance import run_all


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("numbers", nargs="*", type=int, help="criteria to run (default all)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args()
    ok = True
    for out in run_all(args.seed, args.numbers or None):
        print(out.line(), flush=True)
        if args.verbose or not out.passed:
            for d in out.details():
                print("    " + d)
        ok = ok and out.passed
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
