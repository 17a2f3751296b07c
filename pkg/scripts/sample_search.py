"""Seeded search for zonoboxtopes with many vertices, one row per zone count.

For each n in the requested range the driver runs the standard sampling
distribution (central integer directions, one side of the first half of
the zones scaled up) and reports the best vertex count found, the trial
that found it, the chamber count of its common zonotope, and the
all-split ceiling 2 * chambers that no type can exceed. Counting uses
the chamber census with a hull fallback, so a full 1000-trial sweep per
n takes seconds.
"""

import argparse
import sys

from maxtope.bicolor import build_zonoboxtope, sample_extremal_detail


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, default=3, help="ambient dimension")
    ap.add_argument("--n-min", type=int, default=3, help="smallest zone count")
    ap.add_argument("--n-max", type=int, default=6, help="largest zone count")
    ap.add_argument("--trials", type=int, default=1000, help="trials per n")
    ap.add_argument("--seed", type=int, default=42, help="base seed")
    args = ap.parse_args()
    if args.d > args.n_min:
        ap.error("need d <= n for every n in the range")

    print(f"d={args.d}, {args.trials} trials per n, seed {args.seed}")
    print(f"{'n':>3} {'best f0':>8} {'trial':>6} {'chambers':>9} {'ceiling':>8}")
    for n in range(args.n_min, args.n_max + 1):
        best = sample_extremal_detail(args.d, n, args.trials, args.seed)
        mid = [(x + y) / 2 for x, y in zip(best.a, best.b)]
        chambers = build_zonoboxtope(best.segments, mid, mid).vertex_count()
        print(
            f"{n:>3} {best.vertex_count:>8} {best.trial_index:>6} "
            f"{chambers:>9} {2 * chambers:>8}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
