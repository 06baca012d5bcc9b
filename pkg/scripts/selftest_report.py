"""Write the seeded selftest report to a JSON file and print a summary."""

import argparse
import json
import sys

from ramcft.selftest import run_selftest


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--out", default="selftest_report.json")
    args = ap.parse_args()
    rep = run_selftest(args.seed, args.trials)
    with open(args.out, "w") as fh:
        json.dump(rep, fh, sort_keys=True, indent=1)
    for sec in rep["sections"]:
        tag = "ok  " if sec["passed"] else "FAIL"
        print(f"{tag} {sec['name']:<22} {sec['checked']:>6} checked")
    sys.exit(0 if rep["passed"] else 1)


if __name__ == "__main__":
    main()
