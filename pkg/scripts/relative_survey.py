"""Relative class groups of every bielliptic cover y^2 = F(x^2) -> Y^2 = F(X) over small fields.

Prints one line per cover and a tally of quotient exponents against the largest safe bound.
"""

import argparse
import json
from collections import Counter

from classexp.ff import GF
from classexp.relative import enumerate_covers, relative_profile


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, nargs="+", default=[5, 7])
    ap.add_argument("--json", help="also dump every profile to this file")
    args = ap.parse_args()

    dump, failed = [], 0
    for q in args.q:
        covers, rejected = enumerate_covers(GF(q))
        exps = Counter()
        print(f"# q = {q}: {len(covers)} covers, rejected {rejected}")
        print("F\th1\t#E\t|S|\tker\tquot\texp\tmax_bound\tpass")
        for cov in covers:
            prof = relative_profile(cov)
            top = max(b.safe_lower for b in prof.bounds.values())
            exps[prof.quotient_exponent] += 1
            failed += not prof.pass_all
            print(f"{list(cov.F)}\t{prof.h1}\t{prof.e_order}\t{prof.image_order}\t{prof.kernel_order}"
                  f"\t{prof.quotient_order}\t{prof.quotient_exponent}\t{top}\t{prof.pass_all}")
            dump.append({"cover": cov.to_spec(), **prof.as_dict()})
        print(f"# quotient exponents: {dict(sorted(exps.items()))}\n")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(dump, fh, indent=2, sort_keys=True, default=str)
    return 2 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
