#!/usr/bin/env python3
"""Scan the unitarizable fraction against its Stirling tail.

Prints exact f(n), the asymptotic approximation, their ratio, and (for small
n where it is cheap) a Monte Carlo estimate with its binomial z-score.
"""

import argparse
import math

from qsync.census import f_qdfa, f_stirling, sample_fraction


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=20)
    parser.add_argument("--samples", type=int, default=100_000, help="Monte Carlo draws for n <= 8")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"{'n':>3} {'f_exact':>14} {'stirling':>14} {'ratio':>8} {'sampled':>10} {'z':>7}")
    for n in range(1, args.max_n + 1):
        exact = float(f_qdfa(n)[0])
        approx = f_stirling(n)
        sampled = z = ""
        if n <= 8 and args.samples:
            estimate = sample_fraction(n, args.samples, seed=args.seed)
            sigma = math.sqrt(exact * (1 - exact) / args.samples)
            sampled = f"{estimate['fraction']:.6f}"
            z = f"{(estimate['fraction'] - exact) / sigma:+.2f}" if sigma else "-"
        print(f"{n:>3} {exact:>14.6e} {approx:>14.6e} {approx / exact:>8.4f} {sampled:>10} {z:>7}")


if __name__ == "__main__":
    main()
