"""List (q, g1, g2, deg phi) where both relative exponent bounds still allow exponent N.

    python scripts/question_explorer.py --N 2 --q 2 3 4 5 --g1-max 60
"""

import argparse
import csv
import sys

from classexp.bounds import question_explorer


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=1)
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3, 4, 5, 7])
    ap.add_argument("--g1-max", type=int, default=40)
    ap.add_argument("--g2-max", type=int, default=20)
    ap.add_argument("--deg-max", type=int, default=8)
    ap.add_argument("--feasible-only", action="store_true",
                    help="drop rows that fail the Riemann-Hurwitz genus inequality")
    args = ap.parse_args()

    rows = question_explorer(args.N, range(2, args.g1_max + 1), range(1, args.g2_max + 1),
                             range(2, args.deg_max + 1), args.q)
    if args.feasible_only:
        rows = [r for r in rows if r.riemann_hurwitz_feasible]
    w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0].as_dict()) if rows else ["q"],
                       lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r.as_dict())
    print(f"# {len(rows)} rows", file=sys.stderr)


if __name__ == "__main__":
    main()
