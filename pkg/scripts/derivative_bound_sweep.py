"""Ratio of the derivative norm to its closed-form bound on random polynomials.

Reports, for each (p, tau) and derivative order, the largest observed
``||d^alpha f||_{p, s_p tau} / (bound(alpha) * ||f||_{p, tau})``; values at
or below one confirm the estimate, values near one show where it is sharp.
"""
import argparse
from collections import defaultdict

import numpy as np

from entireops import growth, series
from entireops.growth import GrowthParams
from entireops.multiindex import enumerate_upto


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--count", type=int, default=60)
    ap.add_argument("--max-degree", type=int, default=20)
    ap.add_argument("--max-order", type=int, default=6)
    ap.add_argument("--dim", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    grid = [GrowthParams(p, tau) for p in (0.5, 1.0, 2.0) for tau in (0.5, 1.0, 2.0)]
    worst = defaultdict(float)
    for _ in range(args.count):
        deg = int(rng.integers(1, args.max_degree + 1))
        coeffs = {mu: complex(*rng.normal(size=2)) for mu in enumerate_upto(args.dim, deg)}
        f = series.TaylorPoly(args.dim, deg, coeffs)
        for prm in grid:
            nf = growth.norm_upper(f, prm)
            for alpha in enumerate_upto(args.dim, args.max_order):
                if sum(alpha) == 0:
                    continue
                df = series.derivative(f, alpha)
                if df.is_zero():
                    continue
                r = growth.norm_upper(df, GrowthParams(prm.p, prm.s_p * prm.tau)) / (
                    growth.derivative_norm_bound(alpha, prm, args.dim) * nf
                )
                key = (prm.p, prm.tau, sum(alpha))
                worst[key] = max(worst[key], r)
    print(f"{'p':>5}{'tau':>6}{'|alpha|':>9}{'worst ratio':>14}")
    for (p, tau, k), r in sorted(worst.items()):
        print(f"{p:>5g}{tau:>6g}{k:>9}{r:>14.4g}")


if __name__ == "__main__":
    main()
