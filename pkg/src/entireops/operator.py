"""Infinite-order differential operators ``P = sum_alpha a_alpha(z) d^alpha``.

Symbols are stored up to a finite order ``max_order``; whatever lies beyond
is controlled only through a pass certificate from
:func:`entireops.growth.check_condition`, which turns into an explicit bound
on the part of ``Pf`` that the truncation leaves out.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional

from . import series
from .growth import ClassVerdict, GrowthParams, check_condition, norm_upper
from .multiindex import MultiIndex, binomial, degree, enumerate_below, graded_key
from .series import TaylorPoly


class CertificateError(ValueError):
    """A certificate cannot control the tail at the requested type."""


@dataclass(frozen=True, eq=False)
class OperatorSymbol:
    dim: int
    max_order: int
    coeffs: Dict[MultiIndex, TaylorPoly] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for alpha, a in self.coeffs.items():
            alpha = MultiIndex(alpha)
            if len(alpha) != self.dim or a.dim != self.dim:
                raise ValueError(f"term {tuple(alpha)} does not match dimension {self.dim}")
            if degree(alpha) > self.max_order:
                raise ValueError(f"term {tuple(alpha)} exceeds max_order {self.max_order}")
            if not a.is_zero():
                clean[alpha] = a
        object.__setattr__(self, "coeffs", {k: clean[k] for k in sorted(clean, key=graded_key)})

    def __getitem__(self, alpha) -> Optional[TaylorPoly]:
        return self.coeffs.get(MultiIndex(alpha))

    def __repr__(self):
        return f"OperatorSymbol(dim={self.dim}, max_order={self.max_order}, terms={len(self.coeffs)})"

    @property
    def order(self) -> int:
        """Largest ``|alpha|`` with a nonzero coefficient; -1 for the zero operator."""
        return max((degree(a) for a in self.coeffs), default=-1)

    def __add__(self, other):
        return add_ops(self, other)

    def __matmul__(self, other):
        return compose(self, other, max(self.max_order, other.max_order))


@dataclass
class ApplyReport:
    result: TaylorPoly
    terms_used: int
    tail_bound: Optional[float] = None
    tail_params: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "terms_used": self.terms_used,
            "tail_bound": self.tail_bound,
            "tail_params": self.tail_params,
            "result": series.to_dict(self.result),
        }


def identity(dim: int, trunc: int = 0) -> OperatorSymbol:
    return OperatorSymbol(dim, 0, {MultiIndex.zero(dim): series.constant(dim, 1.0, trunc)})


def zero_operator(dim: int, max_order: int = 0) -> OperatorSymbol:
    return OperatorSymbol(dim, max_order, {})


def multiplication(g: TaylorPoly) -> OperatorSymbol:
    return OperatorSymbol(g.dim, 0, {MultiIndex.zero(g.dim): g})


def scale_op(P: OperatorSymbol, c) -> OperatorSymbol:
    return OperatorSymbol(P.dim, P.max_order, {a: series.scale(f, c) for a, f in P.coeffs.items()})


def _select_certificate(cert: ClassVerdict, params: GrowthParams, n: int):
    if cert.mode != "normal" or cert.status != "pass":
        raise ValueError(f"need a normal-mode pass certificate, got {cert.mode}/{cert.status}")
    if cert.p is not None and not math.isclose(cert.p, params.p):
        raise ValueError(f"certificate is for p={cert.p}, not p={params.p}")
    p, tau = params.p, params.tau
    base = (math.e * tau * p) ** (1.0 / p) * 4.0 * math.sqrt(n)
    best = None
    for c in cert.certificates:
        ratio = base * c.eps
        if c.status != "ok" or ratio >= 1.0:
            continue
        c_prime = 2.0 ** (n - 1) * c.C_effective / (1.0 - ratio)
        if best is None or c_prime < best[2]:
            best = (c, ratio, c_prime)
    if best is None:
        smallest = min(c.eps for c in cert.certificates) if cert.certificates else float("nan")
        raise CertificateError(
            f"certificate too weak at this tau: need eps < {1.0 / base:.6g}, smallest eps is {smallest:.6g}"
        )
    return best


def apply(
    P: OperatorSymbol,
    f: TaylorPoly,
    params: Optional[GrowthParams] = None,
    certificate: Optional[ClassVerdict] = None,
) -> ApplyReport:
    """``Pf = sum_alpha a_alpha d^alpha f`` over the stored terms.

    Only ``|alpha| <= deg f`` contributes.  With a certificate, the report
    also carries the geometric-series bound on the terms beyond
    ``max_order`` in the ``(p, B + s_p tau)``-norm.
    """
    if P.dim != f.dim:
        raise ValueError(f"dimension mismatch: operator {P.dim}, function {f.dim}")
    chosen = None
    if certificate is not None:
        if params is None:
            raise ValueError("a certificate needs GrowthParams for the input type")
        chosen = _select_certificate(certificate, params, P.dim)
    d = f.degree
    result = None
    used = 0
    for alpha, a in P.coeffs.items():
        if degree(alpha) > d:
            break  # graded order
        term = series.mul(a, series.derivative(f, alpha))
        result = term if result is None else series.add(result, term)
        used += 1
    if result is None:
        result = series.zero(f.dim, f.trunc)

    tail_bound = tail_params = None
    if chosen is not None:
        c, ratio, c_prime = chosen
        n = P.dim
        C = c.C_effective
        tail_bound = 2.0 ** (n - 1) * C * ratio ** (P.max_order + 1) / (1.0 - ratio) * norm_upper(f, params)
        tail_params = {
            "eps": c.eps,
            "B": c.B,
            "C": C,
            "tau": params.tau,
            "tau_prime": c.B + params.s_p * params.tau,
            "ratio": ratio,
            "C_prime": c_prime,
        }
    return ApplyReport(result, used, tail_bound, tail_params)


def add_ops(P: OperatorSymbol, Q: OperatorSymbol) -> OperatorSymbol:
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    out: Dict[MultiIndex, TaylorPoly] = dict(P.coeffs)
    for alpha, b in Q.coeffs.items():
        out[alpha] = series.add(out[alpha], b) if alpha in out else b
    return OperatorSymbol(P.dim, max(P.max_order, Q.max_order), out)


def compose(P: OperatorSymbol, Q: OperatorSymbol, result_max_order: int) -> OperatorSymbol:
    """Symbol of ``P o Q`` up to order ``result_max_order``.

    Leibniz: ``d^alpha (b_beta d^beta f) = sum_{delta <= alpha} C(alpha, delta)
    (d^delta b_beta) d^{alpha - delta + beta} f``.
    """
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    N = result_max_order
    if N < 0:
        raise ValueError("result_max_order must be >= 0")
    out: Dict[MultiIndex, TaylorPoly] = {}
    for alpha, a in P.coeffs.items():
        for delta in enumerate_below(alpha):
            rest = alpha - delta
            if degree(rest) > N:
                continue
            w = binomial(alpha, delta)
            for beta, b in Q.coeffs.items():
                gamma = rest + beta
                if degree(gamma) > N:
                    continue
                db = series.derivative(b, delta)
                if db.is_zero():
                    continue
                term = series.scale(series.mul(a, db), w)
                out[gamma] = series.add(out[gamma], term) if gamma in out else term
    return OperatorSymbol(P.dim, N, out)


def truncate_order(P: OperatorSymbol, N: int) -> OperatorSymbol:
    return OperatorSymbol(P.dim, N, {a: f for a, f in P.coeffs.items() if degree(a) <= N})


def classify(P: OperatorSymbol, p: float, mode: str = "normal", **grids) -> ClassVerdict:
    """Membership check for D_p (normal) or D_{p,0} (minimal) via condition (IV)."""
    return check_condition(P, p, mode=mode, which="IV", **grids)


def max_coeff_diff(P: OperatorSymbol, Q: OperatorSymbol, upto_order: Optional[int] = None) -> float:
    """Largest coefficientwise discrepancy between two symbols."""
    if P.dim != Q.dim:
        raise ValueError("dimension mismatch")
    keys = set(P.coeffs) | set(Q.coeffs)
    worst = 0.0
    for alpha in keys:
        if upto_order is not None and degree(alpha) > upto_order:
            continue
        a, b = P[alpha], Q[alpha]
        if a is None:
            a, b = b, a
        if b is None:
            worst = max(worst, max((abs(c) for c in a.coeffs.values()), default=0.0))
        else:
            worst = max(worst, series.max_abs_diff(a, b))
    return worst


def to_dict(P: OperatorSymbol) -> dict:
    return {
        "dim": P.dim,
        "max_order": P.max_order,
        "terms": [{"alpha": list(a), "coeff": series.to_dict(f)} for a, f in P.coeffs.items()],
    }


def from_dict(obj: Mapping) -> OperatorSymbol:
    for key in ("dim", "max_order", "terms"):
        if key not in obj:
            raise KeyError(f"operator object is missing field {key!r}")
    coeffs = {}
    for i, t in enumerate(obj["terms"]):
        if "alpha" not in t or "coeff" not in t:
            raise KeyError(f"term {i} needs fields 'alpha' and 'coeff'")
        coeffs[MultiIndex(t["alpha"])] = series.from_dict(t["coeff"])
    return OperatorSymbol(int(obj["dim"]), int(obj["max_order"]), coeffs)
