"""Growth-condition verdicts for the builtin symbols over a range of orders p.

    python3 scripts/classification_sweep.py --p 0.5 1 2 3 --json sweep.json
"""
import argparse
import json
import time

from entireops import builtin, growth


def symbols(max_order):
    return {
        "translation(a=1)": builtin.translation_symbol([1.0], max_order),
        "translation(a=i)": builtin.translation_symbol([1j], max_order),
        "dilation(sigma=0.5)": builtin.dilation_symbol(0.5, 1, max_order),
        "dilation(sigma=1)": builtin.dilation_symbol(1.0, 1, max_order),
        "schrodinger(t=0.1)": builtin.schrodinger_propagator(0.1, max_order),
        "schrodinger(t=0.5)": builtin.schrodinger_propagator(0.5, max_order),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--p", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    ap.add_argument("--max-order", type=int, default=builtin.DEFAULT_MAX_ORDER)
    ap.add_argument("--conditions", nargs="+", default=list(growth.CONDITIONS))
    ap.add_argument("--json", help="write all rows here")
    args = ap.parse_args()

    rows = []
    header = f"{'symbol':<22}{'p':>5}  {'mode':<8}" + "".join(f"{c:>14}" for c in args.conditions) + "   time"
    print(header)
    print("-" * len(header))
    for name, P in symbols(args.max_order).items():
        for p in args.p:
            for mode in ("normal", "minimal"):
                t0 = time.perf_counter()
                verdicts = {c: growth.check_condition(P, p, mode=mode, which=c) for c in args.conditions}
                dt = time.perf_counter() - t0
                cells = "".join(f"{v.status:>14}" for v in verdicts.values())
                print(f"{name:<22}{p:>5g}  {mode:<8}{cells}  {dt:5.1f}s")
                rows.append({"symbol": name, "p": p, "mode": mode, "verdicts": {c: v.to_dict() for c, v in verdicts.items()}})
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
