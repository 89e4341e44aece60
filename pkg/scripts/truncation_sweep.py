"""How the default truncations (max_order, coeff_trunc, K) control the Schrodinger check.

For each t the factored propagator is compared against the Hamiltonian
series oracle while one truncation parameter varies and the others stay at
their defaults.  The printed deviations show the margin left by the defaults.
"""
import argparse

from entireops import builtin, series


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--t", type=float, nargs="+", default=[0.1, 0.5, 1.0])
    ap.add_argument("--phi-degree", type=int, default=60, help="truncation of the exp(z) input")
    args = ap.parse_args()

    phi = series.exp_linear([1.0], 0.0, args.phi_degree)
    points = builtin.default_sample_points()
    for t in args.t:
        print(f"t = {t}")
        for max_order in (4, 8, 12, 16, 24):
            rep = builtin.schrodinger_check(phi, t, points, max_order=max_order)
            print(f"  max_order={max_order:>3}  deviation={rep['max_rel_deviation']:.3e}")
        for K in (10, 20, 30, 40):
            rep = builtin.schrodinger_check(phi, t, points, K=K)
            print(f"  K={K:>3}          deviation={rep['max_rel_deviation']:.3e}")
        a = builtin.hamiltonian_series_oracle(phi, t, 30)
        b = builtin.hamiltonian_series_oracle(phi, t, 40)
        print(f"  oracle change K=30 -> 40: {series.max_abs_diff(a, b, upto=a.trunc):.3e}")


if __name__ == "__main__":
    main()
