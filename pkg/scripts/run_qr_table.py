#!/usr/bin/env python3
"""Longest arithmetic progression inside the quadratic residues, per prime,
next to the p^(1/4) reference value.

Runs prime by prime so a sanity-bound violation (longest > sqrt(p), known to
occur at p = 13) is recorded in the table instead of aborting the run.
"""

import argparse
import math

from progset.errors import VerificationError
from progset.experiments import qr_experiment
from progset.field import is_prime


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pmax", type=int, default=1009)
    args = ap.parse_args()

    print("p,qr_card,longest_ap,p_quarter,p_half,within_sqrt_bound")
    flagged = []
    for p in range(3, args.pmax + 1, 2):
        if not is_prime(p):
            continue
        try:
            row = qr_experiment([p]).rows[0]
            ok = True
            longest, card = row.longest_ap, row.qr_card
        except VerificationError:
            ok = False
            from progset.field import build_field
            from progset.generators import quadratic_residues
            from progset.progressions import longest_ap as _longest

            t = build_field(p)
            qr = quadratic_residues(t)
            card = qr.card
            longest = _longest(t, qr)[0]
            flagged.append(p)
        print(f"{p},{card},{longest},{p**0.25:.3f},{math.sqrt(p):.3f},{ok}")
    if flagged:
        print(f"# sqrt(p) sanity bound exceeded at: {flagged}")


if __name__ == "__main__":
    main()
