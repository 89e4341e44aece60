"""Ready-made symbols: translation, dilation and the factored Schrodinger propagator.

Each constructor comes with an oracle that does not touch the operator
machinery (``series.translate``, ``series.dilate``, and the direct
exponential series of the Hamiltonian for the propagator).
"""
from __future__ import annotations

import cmath
import math
from typing import Dict, List, Optional, Sequence

from . import series
from .multiindex import MultiIndex, degree, enumerate_upto, factorial
from .operator import OperatorSymbol, apply
from .series import TaylorPoly

DEFAULT_MAX_ORDER = 24
DEFAULT_COEFF_TRUNC = 60
DEFAULT_K = 40


def translation_symbol(a: Sequence, max_order: int = DEFAULT_MAX_ORDER, coeff_trunc: int = DEFAULT_COEFF_TRUNC) -> OperatorSymbol:
    """``sum_alpha a^alpha / alpha! d^alpha``, i.e. ``f -> f(z + a)``."""
    a = [complex(x) for x in a]
    n = len(a)
    coeffs = {}
    for alpha in enumerate_upto(n, max_order):
        c = 1 + 0j
        for aj, k in zip(a, alpha):
            if k:
                c *= aj**k
        coeffs[alpha] = series.constant(n, c / factorial(alpha), coeff_trunc)
    return OperatorSymbol(n, max_order, coeffs)


def dilation_symbol(sigma, dim: int = 1, max_order: int = DEFAULT_MAX_ORDER, coeff_trunc: int = DEFAULT_COEFF_TRUNC) -> OperatorSymbol:
    """``sum_alpha sigma^{|alpha|} z^alpha / alpha! d^alpha``, i.e. ``f -> f((1 + sigma) z)``."""
    if coeff_trunc < max_order:
        raise ValueError("coeff_trunc must be >= max_order to hold z^alpha")
    sigma = complex(sigma)
    coeffs = {
        alpha: series.monomial(dim, alpha, sigma ** degree(alpha) / factorial(alpha), coeff_trunc)
        for alpha in enumerate_upto(dim, max_order)
    }
    return OperatorSymbol(dim, max_order, coeffs)


def propagator_prefactor(t: float, coeff_trunc: int = DEFAULT_COEFF_TRUNC) -> TaylorPoly:
    """Series of ``exp(-i (t z + t^3/6))``."""
    return series.exp_linear([-1j * t], -1j * t**3 / 6, coeff_trunc)


def free_part_coefficients(t: float, max_order: int) -> List[complex]:
    """``e_k`` with ``exp((it/2) d^2 + (t^2/2) d) = sum_k e_k d^k``.

    The two terms commute, so the exponential is the double series
    ``sum_{j,l} (it/2)^j (t^2/2)^l / (j! l!) d^{2j+l}`` grouped by ``2j + l``.
    """
    u, v = 0.5j * t, 0.5 * t * t
    out = []
    for k in range(max_order + 1):
        total = 0j
        for j in range(k // 2 + 1):
            l = k - 2 * j
            total += u**j * v**l / (math.factorial(j) * math.factorial(l))
        out.append(total)
    return out


def schrodinger_propagator(t: float, max_order: int = DEFAULT_MAX_ORDER, coeff_trunc: int = DEFAULT_COEFF_TRUNC) -> OperatorSymbol:
    """Factored propagator ``exp(-i(tz + t^3/6)) exp((it/2) d^2 + (t^2/2) d)`` on C^1."""
    pre = propagator_prefactor(t, coeff_trunc)
    coeffs = {
        MultiIndex((k,)): series.scale(pre, e)
        for k, e in enumerate(free_part_coefficients(t, max_order))
    }
    return OperatorSymbol(1, max_order, coeffs)


def hamiltonian(f: TaylorPoly, trunc: Optional[int] = None) -> TaylorPoly:
    """``H f = -1/2 f'' + z f``.

    With ``trunc`` given, ``f`` is treated as an exact polynomial and the
    result is kept at that truncation; otherwise the truncation drops by 2.
    """
    d2 = series.scale(series.derivative(f, (2,)), -0.5)
    if trunc is None:
        z = series.variable(1, 0, f.trunc)
        return series.add(d2, series.mul(z, f))
    z = series.variable(1, 0, trunc)
    return series.add(series.with_trunc(d2, trunc), series.mul(z, series.with_trunc(f, trunc)))


def hamiltonian_series_oracle(phi: TaylorPoly, t: float, K: int = DEFAULT_K, exact_polynomial: bool = True) -> TaylorPoly:
    """``sum_{k<=K} (t/i)^k H^k phi / k!`` computed by repeated Hamiltonian steps.

    In the default mode ``phi`` is the polynomial given by its stored
    coefficients, and the working truncation ``deg(phi) + K`` holds every
    ``H^k phi`` exactly.  With ``exact_polynomial=False`` the truncation of
    ``phi`` is respected and each step costs two degrees.
    """
    if phi.dim != 1:
        raise ValueError("the Hamiltonian oracle is one-dimensional")
    if K < 0:
        raise ValueError("K must be >= 0")
    step = -1j * t  # t / i
    if exact_polynomial:
        W = max(phi.degree, 0) + K
        g = series.with_trunc(phi, max(W, phi.trunc))
        W = g.trunc
        apply_h = lambda f: hamiltonian(f, W)  # noqa: E731
    else:
        if phi.trunc < 2 * K:
            raise ValueError(f"truncation {phi.trunc} too small for K={K}: need trunc >= {2 * K}")
        g = phi
        apply_h = hamiltonian
    total = g
    coef = 1 + 0j
    for k in range(1, K + 1):
        g = apply_h(g)
        coef *= step / k
        total = series.add(total, series.scale(g, coef))
    return total


def default_sample_points(radius: float = 2.0, n_radii: int = 5, n_angles: int = 5) -> List[complex]:
    pts = []
    for i in range(1, n_radii + 1):
        r = radius * i / n_radii
        for j in range(n_angles):
            theta = 2 * math.pi * j / n_angles + 0.3 * i
            pts.append(cmath.rect(r, theta))
    return pts


def _lift(phi: TaylorPoly, coeff_trunc: int) -> TaylorPoly:
    return series.with_trunc(phi, max(phi.trunc, coeff_trunc + max(phi.degree, 0)))


def propagate(phi: TaylorPoly, t: float, max_order: int = DEFAULT_MAX_ORDER, coeff_trunc: int = DEFAULT_COEFF_TRUNC) -> TaylorPoly:
    """Factored propagator applied to the polynomial ``phi``."""
    P = schrodinger_propagator(t, max_order, coeff_trunc)
    return apply(P, _lift(phi, coeff_trunc)).result


def schrodinger_check(
    phi: TaylorPoly,
    t: float,
    points: Optional[Sequence[complex]] = None,
    K: int = DEFAULT_K,
    tol: float = 1e-6,
    h: float = 1e-4,
    max_order: int = DEFAULT_MAX_ORDER,
    coeff_trunc: int = DEFAULT_COEFF_TRUNC,
) -> Dict:
    """Compare the factored propagator with the Hamiltonian series and check the PDE.

    The residual is ``i d_t psi - (-1/2 d_z^2 + z) psi`` with a centred
    difference of step ``h`` in ``t``.
    """
    if points is None:
        points = default_sample_points()
    psi = propagate(phi, t, max_order, coeff_trunc)
    ref = hamiltonian_series_oracle(phi, t, K)
    psi_plus = propagate(phi, t + h, max_order, coeff_trunc)
    psi_minus = propagate(phi, t - h, max_order, coeff_trunc)
    h_psi = hamiltonian(psi)

    rows = []
    max_dev = max_res = 0.0
    for z in points:
        a, b = psi((z,)), ref((z,))
        dev = abs(a - b) / abs(b) if abs(b) > 1e-300 else abs(a - b)
        dt = (psi_plus((z,)) - psi_minus((z,))) / (2 * h)
        res = abs(1j * dt - h_psi((z,)))
        max_dev, max_res = max(max_dev, dev), max(max_res, res)
        rows.append({"z": [z.real, z.imag], "factored": [a.real, a.imag], "oracle": [b.real, b.imag], "rel_dev": dev, "residual": res})
    return {
        "t": t,
        "K": K,
        "h": h,
        "max_rel_deviation": max_dev,
        "max_pde_residual": max_res,
        "tol": tol,
        "passed": max_dev < tol,
        "points": rows,
    }
