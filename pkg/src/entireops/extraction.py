"""Recover the symbol of a linear operator from its values on monomials.

For a black box ``F`` the coefficients are

    a_alpha(z) = sum_{beta <= alpha} (-1)^{|alpha-beta|} z^{alpha-beta} / ((alpha-beta)! beta!) * F(z^beta)

and ``P = sum a_alpha d^alpha`` then agrees with ``F`` on every polynomial of
degree at most the extracted order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Mapping, Optional, Sequence

from . import series
from .multiindex import MultiIndex, binomial, degree, enumerate_below, enumerate_upto, factorial
from .operator import OperatorSymbol, apply, max_coeff_diff
from .series import TaylorPoly


@dataclass(frozen=True)
class BlackBoxOperator:
    dim: int
    action: Callable[[MultiIndex], TaylorPoly]
    declared_trunc: int
    reentrant: bool = False

    def __call__(self, beta) -> TaylorPoly:
        out = self.action(MultiIndex(beta))
        if out.dim != self.dim:
            raise ValueError(f"action on z^{tuple(beta)} returned dimension {out.dim}, expected {self.dim}")
        return out

    def apply_linear(self, f: TaylorPoly) -> TaylorPoly:
        """``Ff = sum_mu c_mu F(z^mu)`` for a polynomial ``f``."""
        total = None
        for mu, c in f.coeffs.items():
            term = series.scale(self(mu), c)
            total = term if total is None else series.add(total, term)
        return total if total is not None else series.zero(self.dim, self.declared_trunc)


def from_operator(P: OperatorSymbol, coeff_trunc: int) -> BlackBoxOperator:
    """The action ``z^beta -> P z^beta`` as a black box."""

    def action(beta):
        z_beta = series.monomial(P.dim, beta, 1.0, coeff_trunc + degree(beta))
        return series.with_trunc(apply(P, z_beta).result, coeff_trunc)

    return BlackBoxOperator(P.dim, action, coeff_trunc)


def from_function(dim: int, fn: Callable[[TaylorPoly], TaylorPoly], declared_trunc: int) -> BlackBoxOperator:
    """Wrap a map on polynomials, e.g. ``lambda f: series.translate(f, [2])``."""

    def action(beta):
        z_beta = series.monomial(dim, beta, 1.0, declared_trunc + degree(beta))
        return series.with_trunc(fn(z_beta), declared_trunc)

    return BlackBoxOperator(dim, action, declared_trunc)


def from_table(dim: int, table: Mapping, declared_trunc: Optional[int] = None) -> BlackBoxOperator:
    """Black box backed by a finite table ``beta -> F z^beta``."""
    table = {MultiIndex(b): v for b, v in table.items()}
    if declared_trunc is None:
        declared_trunc = min((v.trunc for v in table.values()), default=0)

    def action(beta):
        if beta not in table:
            raise KeyError(f"no table entry for beta={list(beta)}")
        return table[beta]

    return BlackBoxOperator(dim, action, declared_trunc)


def combine(terms: Sequence, declared_trunc: Optional[int] = None) -> BlackBoxOperator:
    """``sum c_i F_i`` for pairs ``(c_i, F_i)``."""
    dim = terms[0][1].dim
    if declared_trunc is None:
        declared_trunc = min(F.declared_trunc for _, F in terms)

    def action(beta):
        total = None
        for c, F in terms:
            v = series.scale(F(beta), c)
            total = v if total is None else series.add(total, v)
        return total

    return BlackBoxOperator(dim, action, declared_trunc)


def missing_indices(table: Mapping, dim: int, max_order: int) -> List[MultiIndex]:
    keys = {MultiIndex(b) for b in table}
    return [b for b in enumerate_upto(dim, max_order) if b not in keys]


def extract_symbol(F: BlackBoxOperator, max_order: int, coeff_trunc: Optional[int] = None) -> OperatorSymbol:
    """Symbol ``{a_alpha : |alpha| <= max_order}`` reproducing ``F`` on monomials.

    ``F(z^beta)`` is evaluated once per ``beta``.  The alternating sum runs
    from the largest ``|beta|`` down with integer binomial weights, so the
    cancellations of the alternating sum happen in exact arithmetic where
    the inputs allow it.
    """
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    N_c = F.declared_trunc if coeff_trunc is None else coeff_trunc
    n = F.dim
    values = lru_cache(maxsize=None)(F.__call__)

    coeffs: Dict[MultiIndex, TaylorPoly] = {}
    for alpha in enumerate_upto(n, max_order):
        # alpha! * weight = +-binomial(alpha, beta) is an integer; the terms
        # are summed with fsum and divided by alpha! once at the end.
        re_parts: Dict[MultiIndex, list] = {}
        im_parts: Dict[MultiIndex, list] = {}
        for beta in reversed(enumerate_below(alpha)):
            gap = alpha - beta
            w = (-1) ** degree(gap) * binomial(alpha, beta)
            shift = degree(gap)
            for mu, c in values(beta).coeffs.items():
                if sum(mu) + shift > N_c:
                    continue
                key = MultiIndex(m + g for m, g in zip(mu, gap))
                re_parts.setdefault(key, []).append(w * c.real)
                im_parts.setdefault(key, []).append(w * c.imag)
        scale = factorial(alpha)
        acc = {
            key: complex(math.fsum(re_parts[key]), math.fsum(im_parts[key])) / scale
            for key in re_parts
        }
        coeffs[alpha] = TaylorPoly(n, N_c, acc)
    return OperatorSymbol(n, max_order, coeffs)


@dataclass
class RoundtripReport:
    max_error: float
    tol: float
    passed: bool
    cases: List[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"max_error": self.max_error, "tol": self.tol, "passed": self.passed, "cases": self.cases}


def verify_roundtrip(F: BlackBoxOperator, P: OperatorSymbol, testset: Sequence[TaylorPoly], tol: float = 1e-10) -> RoundtripReport:
    """Compare ``F`` (through linearity on monomials) with ``apply(P, .)`` on test polynomials."""
    worst = 0.0
    cases = []
    for i, f in enumerate(testset):
        if f.degree > P.max_order:
            cases.append({"index": i, "degree": f.degree, "status": "not covered"})
            continue
        via_f = F.apply_linear(f)
        lifted = series.with_trunc(f, max(f.trunc, F.declared_trunc + max(f.degree, 0)))
        via_p = apply(P, lifted).result
        err = series.max_abs_diff(via_f, via_p)
        worst = max(worst, err)
        cases.append({"index": i, "degree": f.degree, "status": "ok" if err < tol else "mismatch", "error": err})
    return RoundtripReport(worst, tol, worst < tol, cases)


@dataclass
class UniquenessProbe:
    symbols_agree: bool
    actions_agree: bool
    discrepancies: Dict[MultiIndex, float] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        """Equal actions must come with equal symbols."""
        return self.symbols_agree or not self.actions_agree

    def __bool__(self):
        return self.symbols_agree


def extraction_uniqueness_probe(P: OperatorSymbol, Q: OperatorSymbol, max_degree: int, tol: float = 1e-10) -> UniquenessProbe:
    """Extract both symbols from their actions and compare them term by term."""
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    truncs = [a.trunc for a in P.coeffs.values()] + [b.trunc for b in Q.coeffs.values()]
    trunc = min(truncs, default=max_degree)
    FP, FQ = from_operator(P, trunc), from_operator(Q, trunc)
    actions_agree = all(
        series.max_abs_diff(FP(mu), FQ(mu)) <= tol for mu in enumerate_upto(P.dim, max_degree)
    )
    SP = extract_symbol(FP, max_degree, trunc)
    SQ = extract_symbol(FQ, max_degree, trunc)
    disc = {}
    for alpha in enumerate_upto(P.dim, max_degree):
        a = SP[alpha] or series.zero(P.dim, trunc)
        b = SQ[alpha] or series.zero(P.dim, trunc)
        d = series.max_abs_diff(a, b)
        if d > tol:
            disc[alpha] = d
    return UniquenessProbe(not disc, actions_agree, disc)


def symbol_discrepancy(P: OperatorSymbol, Q: OperatorSymbol, upto_order: Optional[int] = None) -> float:
    return max_coeff_diff(P, Q, upto_order)
