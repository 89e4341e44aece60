"""Command line front end.

    entireops apply OPERATOR FUNCTION --p P --tau TAU [--certificate CERT]
    entireops extract BLACKBOX --max-order N [--coeff-trunc NC]
    entireops classify OPERATOR --p P [--mode normal|minimal] [--condition IV]
    entireops norm FUNCTION --p P --tau TAU
    entireops schrodinger --t T [--phi FUNCTION] [--grid polar:2:5:5] [--K 40]

Every command writes one JSON document (to ``--out`` or stdout).  Exit
codes: 0 success / pass, 1 fail verdict, 2 input error, 3 certificate
error, 4 inconclusive verdict.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from pathlib import Path

from . import builtin, extraction, growth, operator, series
from .growth import ClassVerdict, GrowthParams
from .multiindex import MultiIndex

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CERT, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def _finite(obj):
    """JSON has no inf/nan; map them to null."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_finite(obj), indent=2, allow_nan=False) + "\n"


def write_json(obj, path):
    text = dumps(obj)
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"{path}: no such file")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})")


def _parse(fn, obj, what):
    try:
        return fn(obj)
    except KeyError as exc:
        msg = str(exc.args[0]) if exc.args else "missing field"
        if " " not in msg:
            msg = f"missing field {msg!r}"
        raise InputError(f"{what}: {msg}")
    except (TypeError, ValueError) as exc:
        raise InputError(f"{what}: {exc}")


def _complex_vec(v):
    if isinstance(v, (int, float)):
        return [complex(v)]
    out = []
    for x in v:
        if isinstance(x, dict):
            out.append(complex(x.get("re", 0.0), x.get("im", 0.0)))
        elif isinstance(x, (list, tuple)):
            out.append(complex(x[0], x[1] if len(x) > 1 else 0.0))
        else:
            out.append(complex(x))
    return out


def _complex(x):
    return _complex_vec([x])[0]


def build_builtin(obj: dict) -> operator.OperatorSymbol:
    """``{"builtin": name, "params": {...}}`` -> symbol."""
    name = obj["builtin"]
    prm = dict(obj.get("params", {}))
    max_order = int(prm.get("max_order", builtin.DEFAULT_MAX_ORDER))
    coeff_trunc = int(prm.get("coeff_trunc", builtin.DEFAULT_COEFF_TRUNC))
    if name == "translation":
        return builtin.translation_symbol(_complex_vec(prm["a"]), max_order, coeff_trunc)
    if name == "dilation":
        return builtin.dilation_symbol(_complex(prm["sigma"]), int(prm.get("dim", 1)), max_order, coeff_trunc)
    if name == "schrodinger":
        return builtin.schrodinger_propagator(float(prm["t"]), max_order, coeff_trunc)
    raise ValueError(f"unknown builtin {name!r}; expected translation, dilation or schrodinger")


def load_operator(path) -> operator.OperatorSymbol:
    obj = read_json(path)
    if isinstance(obj, dict) and "builtin" in obj:
        return _parse(build_builtin, obj, str(path))
    return _parse(operator.from_dict, obj, str(path))


def load_function(path) -> series.TaylorPoly:
    return _parse(series.from_dict, read_json(path), str(path))


def load_blackbox(path, max_order):
    obj = read_json(path)

    def parse(o):
        dim = int(o["dim"])
        table = {}
        for i, e in enumerate(o["entries"]):
            if "beta" not in e or "value" not in e:
                raise KeyError(f"entries[{i}].beta/value")
            table[MultiIndex(e["beta"])] = series.from_dict(e["value"])
        return dim, table

    dim, table = _parse(parse, obj, str(path))
    missing = extraction.missing_indices(table, dim, max_order)
    if missing:
        listed = ", ".join(str(list(b)) for b in missing)
        raise InputError(f"{path}: table misses beta = {listed}")
    return extraction.from_table(dim, table)


def _float_list(text):
    if text is None:
        return None
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"bad number list {text!r}")


def parse_grid(text: str):
    """``polar:R:NR:NA`` or a comma list of complex literals like ``1+2j``."""
    if text.startswith("polar"):
        parts = text.split(":")
        try:
            R = float(parts[1]) if len(parts) > 1 else 2.0
            nr = int(parts[2]) if len(parts) > 2 else 5
            na = int(parts[3]) if len(parts) > 3 else 5
        except ValueError:
            raise InputError(f"bad grid {text!r}")
        return builtin.default_sample_points(R, nr, na)
    try:
        return [complex(x.strip().replace(" ", "")) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"bad grid {text!r}")


# --------------------------------------------------------------------------
# commands


def cmd_apply(args):
    P = load_operator(args.operator)
    f = load_function(args.function)
    params = GrowthParams(args.p, args.tau)
    cert = None
    if args.certificate:
        cert = _parse(ClassVerdict.from_dict, read_json(args.certificate), args.certificate)
    try:
        report = operator.apply(P, f, params, cert)
    except operator.CertificateError as exc:
        print(f"certificate error: {exc}", file=sys.stderr)
        return EXIT_CERT
    if args.out:
        write_json(series.to_dict(report.result), args.out)
    write_json(report.to_dict(), args.report)
    return EXIT_OK


def cmd_extract(args):
    F = load_blackbox(args.blackbox, args.max_order)
    S = extraction.extract_symbol(F, args.max_order, args.coeff_trunc)
    write_json(operator.to_dict(S), args.out)
    return EXIT_OK


def cmd_classify(args):
    P = load_operator(args.operator)
    grids = {}
    if args.eps_grid:
        grids["eps_grid"] = _float_list(args.eps_grid)
    if args.b_grid:
        grids["B_grid"] = _float_list(args.b_grid)
    verdict = growth.check_condition(P, args.p, mode=args.mode, which=args.condition, **grids)
    write_json(verdict.to_dict(), args.out)
    return {"pass": EXIT_OK, "fail": EXIT_FAIL}.get(verdict.status, EXIT_INCONCLUSIVE)


def cmd_norm(args):
    f = load_function(args.function)
    b = growth.norm_bracket(f, GrowthParams(args.p, args.tau))
    write_json(b.to_dict(), args.out)
    return EXIT_OK


def cmd_schrodinger(args):
    phi = load_function(args.phi) if args.phi else series.constant(1, 1.0, 0)
    points = parse_grid(args.grid)
    report = builtin.schrodinger_check(phi, args.t, points, K=args.K, tol=args.tol)
    write_json(report, args.out)
    return EXIT_OK


DEFAULTS = {
    "mode": "normal",
    "condition": "IV",
    "grid": "polar:2:5:5",
    "K": builtin.DEFAULT_K,
    "tol": 1e-6,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entireops", description=__doc__.split("\n")[0])
    parser.add_argument("--config", help="JSON file of option defaults; explicit flags win")
    sub = parser.add_subparsers(dest="command", required=True)

    ap = sub.add_parser("apply", help="apply an operator to a function")
    ap.add_argument("operator")
    ap.add_argument("function")
    ap.add_argument("--p", type=float)
    ap.add_argument("--tau", type=float)
    ap.add_argument("--certificate")
    ap.add_argument("--out", help="result TaylorPoly JSON")
    ap.add_argument("--report", help="ApplyReport JSON (default stdout)")
    ap.set_defaults(func=cmd_apply, required=("p", "tau"))

    ex = sub.add_parser("extract", help="extract a symbol from a black-box table")
    ex.add_argument("blackbox")
    ex.add_argument("--max-order", dest="max_order", type=int)
    ex.add_argument("--coeff-trunc", dest="coeff_trunc", type=int)
    ex.add_argument("--out")
    ex.set_defaults(func=cmd_extract, required=("max_order",))

    cl = sub.add_parser("classify", help="check membership in D_p or D_{p,0}")
    cl.add_argument("operator")
    cl.add_argument("--p", type=float)
    cl.add_argument("--mode", choices=("normal", "minimal"))
    cl.add_argument("--condition", choices=("I", "II", "III", "IV"))
    cl.add_argument("--eps-grid", dest="eps_grid")
    cl.add_argument("--b-grid", dest="b_grid")
    cl.add_argument("--out")
    cl.set_defaults(func=cmd_classify, required=("p",))

    nm = sub.add_parser("norm", help="bracket the (p, tau)-norm of a function")
    nm.add_argument("function")
    nm.add_argument("--p", type=float)
    nm.add_argument("--tau", type=float)
    nm.add_argument("--out")
    nm.set_defaults(func=cmd_norm, required=("p", "tau"))

    sc = sub.add_parser("schrodinger", help="check the factored Schrodinger propagator")
    sc.add_argument("--t", type=float)
    sc.add_argument("--phi")
    sc.add_argument("--grid")
    sc.add_argument("--K", type=int)
    sc.add_argument("--tol", type=float)
    sc.add_argument("--out")
    sc.set_defaults(func=cmd_schrodinger, required=("t",))
    return parser


def _merge_config(args):
    config = read_json(args.config) if args.config else {}
    if not isinstance(config, dict):
        raise InputError(f"{args.config}: config must be a JSON object")
    for key, value in {**DEFAULTS, **{k.replace("-", "_"): v for k, v in config.items()}}.items():
        if getattr(args, key, "absent") is None:
            setattr(args, key, value)
    missing = [k for k in args.required if getattr(args, k, None) is None]
    if missing:
        raise InputError("missing required option(s): " + ", ".join("--" + k.replace("_", "-") for k in missing))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        _merge_config(args)
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (KeyError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
