#!/usr/bin/env python3
"""Density sweep at q = 67: how often does A*B (or A*B + h) hold a 3-term
progression, against the exact cardinality threshold that guarantees one."""

import argparse

from progset.experiments import SweepConfig, threshold_sweep


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=67)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--h", type=int, default=1)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=3)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    densities = (0.3, 0.5, 0.7, 0.82, 1.0)
    for kind in ("ap", "gp"):
        cfg = SweepConfig(kind=kind, p=args.p, k=args.k, h=args.h,
                          densities=densities, trials=args.trials,
                          seed=args.seed, workers=args.workers)
        res = threshold_sweep(cfg)
        print(f"# {kind} sweep, q={res.q}, k={res.k}, "
              f"guaranteed-region marker alpha*={res.theorem_marker:.4f}")
        print("density,success_fraction,hypothesis_fraction,mean_longest")
        for row in res.rows:
            print(f"{row.density},{row.success_fraction},"
                  f"{row.hypothesis_fraction},{row.mean_longest}")
        print()


if __name__ == "__main__":
    main()
