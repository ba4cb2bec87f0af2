#!/usr/bin/env python3
"""Growth of the longest progression in productsets of dense random sets,
measured against log q, with the fitted slope."""

import argparse

from progset.experiments import growth_experiment


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qs", type=str, default="101,211,401,809,1601")
    ap.add_argument("--alpha", type=float, default=0.5)
    ap.add_argument("--beta", type=float, default=0.5)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--h", type=int, default=1)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    qs = [int(x) for x in args.qs.split(",")]
    for kind in ("ap", "gp"):
        table = growth_experiment(kind, qs, args.alpha, args.beta,
                                  args.trials, args.seed, h=args.h,
                                  workers=args.workers)
        print(f"# {kind} growth, alpha={args.alpha}, beta={args.beta}, "
              f"fitted slope kappa_hat={table.kappa_hat:.3f}")
        print("q,log_q,mean_longest,min_longest")
        for row in table.rows:
            print(f"{row.q},{row.log_q:.4f},{row.mean_longest},{row.min_longest}")
        print()


if __name__ == "__main__":
    main()
