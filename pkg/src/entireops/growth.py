"""Growth norms and the coefficient growth conditions for D_p / D_{p,0}.

The (p, tau)-norm ``sup_z |f(z)| exp(-tau |z|^p)`` of a truncated series is
bracketed from both sides:

* the upper end replaces ``|f|`` on the sphere ``|z| = r`` by the radial
  majorant ``M(r) = sum_k A_k r^k`` with ``A_k = sum_{|mu|=k} |c_mu|`` and
  maximises ``M(r) exp(-tau r^p)`` over ``r >= 0``;
* the lower end is ``|f(z)| exp(-tau |z|^p)`` at explicit witness points.

Everything is done with logarithms so degree-60 series at large radii neither
overflow nor underflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from .multiindex import MultiIndex, degree, factorial
from .series import TaylorPoly

GRID_POINTS = 512
R_MIN = 1e-6
REFINE_TOL = 1e-9
N_RANDOM_DIRECTIONS = 64
DIRECTION_SEED = 20240611

DEFAULT_EPS_GRID = tuple(2.0**-k for k in range(9))
DEFAULT_B_GRID = tuple(float(b) for b in np.geomspace(1e-3, 1e3, 32))
B_CAP = 1e8

# trend classification of log-margin increments, see _analyse_increments
SLOPE_THRESHOLD = 0.2
RATE_TOL = 0.05


@dataclass(frozen=True)
class GrowthParams:
    p: float
    tau: float

    def __post_init__(self):
        if not (self.p > 0 and self.tau > 0):
            raise ValueError(f"need p > 0 and tau > 0, got p={self.p}, tau={self.tau}")

    @property
    def s_p(self) -> float:
        return max(2.0 ** (self.p - 1.0), 1.0)

    @property
    def inv_q(self) -> float:
        # 1/p + 1/q = 1, with the convention 1/q = 0 at p = 1
        if self.p == 1:
            return 0.0
        return 1.0 - 1.0 / self.p


@dataclass(frozen=True)
class NormBracket:
    lower: float
    upper: float
    witness: Optional[Tuple[complex, ...]] = None
    radius: float = 0.0

    def contains(self, value: float, rtol: float = 0.0) -> bool:
        return self.lower * (1 - rtol) <= value <= self.upper * (1 + rtol)

    def to_dict(self) -> dict:
        w = None
        if self.witness is not None:
            w = [{"re": z.real, "im": z.imag} for z in self.witness]
        return {"lower": self.lower, "upper": self.upper, "radius": self.radius, "witness": w}


# --------------------------------------------------------------------------
# radial majorant


def _radial_log_coeffs(f: TaylorPoly) -> Tuple[np.ndarray, np.ndarray]:
    """Degrees k and log A_k for the nonzero radial majorant coefficients."""
    acc: Dict[int, float] = {}
    for mu, c in f.coeffs.items():
        k = sum(mu)
        acc[k] = acc.get(k, 0.0) + abs(c)
    ks = np.array(sorted(acc), dtype=float)
    return ks, np.log(np.array([acc[int(k)] for k in ks]))


def _log_objective(ks, logA, tau, p, s):
    """log( M(e^s) exp(-tau e^{ps}) ) for an array of log-radii s."""
    s = np.atleast_1d(s)
    x = logA[None, :] + ks[None, :] * s[:, None]
    m = x.max(axis=1)
    return m + np.log(np.exp(x - m[:, None]).sum(axis=1)) - tau * np.exp(p * s)


def _refine_max(fn, s3, v3) -> Tuple[float, float]:
    """Golden-section refinement of a grid maximum at ``s3[1]``."""
    best, best_s = float(v3[1]), float(s3[1])
    if not (v3[1] > v3[0] and v3[1] > v3[2]):
        return best, best_s  # flat neighbourhood; the grid value stands
    try:
        res = minimize_scalar(lambda x: -fn(x), bracket=tuple(s3), method="golden", tol=REFINE_TOL)
    except ValueError:
        # scalar re-evaluation broke the strict bracket at rounding level
        return best, best_s
    if -res.fun > best:
        return float(-res.fun), float(res.x)
    return best, best_s


def _radial_sup(ks, logA, tau, p) -> Tuple[float, float]:
    """(log sup, argmax radius) of M(r) exp(-tau r^p) over r >= 0."""
    at_zero = logA[0] if ks[0] == 0 else -np.inf
    kmax = ks[-1]
    if kmax == 0:
        return float(at_zero), 0.0
    # r M'(r)/M(r) <= kmax, so the objective decreases once tau p r^p > kmax
    r_hi = 2.0 * max(1.0, (kmax / (tau * p)) ** (1.0 / p))
    s = np.linspace(math.log(R_MIN), math.log(r_hi), GRID_POINTS)
    vals = _log_objective(ks, logA, tau, p, s)
    i = int(np.argmax(vals))
    best, best_s = float(vals[i]), float(s[i])
    if 0 < i < GRID_POINTS - 1:
        pairs = list(zip(logA.tolist(), ks.tolist()))

        def scalar(x):
            terms = [la + k * x for la, k in pairs]
            m = max(terms)
            return m + math.log(math.fsum(math.exp(t - m) for t in terms)) - tau * math.exp(p * x)

        best, best_s = _refine_max(scalar, s[i - 1 : i + 2], vals[i - 1 : i + 2])
    if at_zero >= best:
        return float(at_zero), 0.0
    return best, math.exp(best_s)


def log_norm_upper(f: TaylorPoly, params: GrowthParams) -> float:
    """log of the majorant upper bound; -inf for the zero series."""
    if f.is_zero():
        return -math.inf
    ks, logA = _radial_log_coeffs(f)
    return _radial_sup(ks, logA, params.tau, params.p)[0]


def norm_upper(f: TaylorPoly, params: GrowthParams) -> float:
    """Certified-by-majorant upper bound of ``||f||_{p,tau}``."""
    return math.exp(log_norm_upper(f, params))


# --------------------------------------------------------------------------
# witnesses


def _directions(n: int) -> np.ndarray:
    rng = np.random.default_rng(DIRECTION_SEED + n)
    fixed = [np.ones(n) / math.sqrt(n)] + [np.eye(n)[j] for j in range(n)] if n > 1 else [np.ones(1)]
    raw = rng.normal(size=(N_RANDOM_DIRECTIONS, n)) + 1j * rng.normal(size=(N_RANDOM_DIRECTIONS, n))
    raw /= np.linalg.norm(raw, axis=1, keepdims=True)
    return np.vstack([np.array(fixed, dtype=complex), raw])


def _radial_profiles(f: TaylorPoly, dirs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Coefficients b_k(u) of r -> f(r u) for each direction u."""
    kmax = f.degree
    ks = np.arange(kmax + 1)
    prof = np.zeros((dirs.shape[0], kmax + 1), dtype=complex)
    for mu, c in f.coeffs.items():
        prof[:, sum(mu)] += c * np.prod(dirs ** np.array(mu), axis=1)
    return ks, prof


def _log_weighted_abs(ks, prof, tau, p, s):
    """log |f(e^s u)| - tau e^{ps} for every direction (rows) and log-radius s (cols)."""
    s = np.atleast_1d(s)
    absb = np.abs(prof)
    with np.errstate(divide="ignore"):
        logb = np.log(absb)
    phase = np.where(absb > 0, prof / np.where(absb > 0, absb, 1.0), 0.0)
    expo = logb[:, :, None] + ks[None, :, None] * s[None, None, :]
    shift = np.max(np.where(np.isfinite(expo), expo, -np.inf), axis=1)
    shift = np.where(np.isfinite(shift), shift, 0.0)
    terms = phase[:, :, None] * np.exp(expo - shift[:, None, :])
    with np.errstate(divide="ignore"):
        return np.log(np.abs(terms.sum(axis=1))) + shift - tau * np.exp(p * s)[None, :]


def _witness_lower(f: TaylorPoly, params: GrowthParams, r_star: float):
    tau, p = params.tau, params.p
    dirs = _directions(f.dim)
    ks, prof = _radial_profiles(f, dirs)
    kmax = f.degree
    r_hi = 2.0 * max(1.0, (kmax / (tau * p)) ** (1.0 / p))
    s = np.linspace(math.log(R_MIN), math.log(r_hi), GRID_POINTS)
    if r_star > 0:
        s = np.sort(np.append(s, math.log(r_star)))
    vals = _log_weighted_abs(ks, prof, tau, p, s)
    # r = 0 is a witness too
    at_zero = math.log(abs(f[MultiIndex.zero(f.dim)])) if abs(f[MultiIndex.zero(f.dim)]) > 0 else -math.inf
    d, i = np.unravel_index(int(np.argmax(vals)), vals.shape)
    best, best_s, best_d = float(vals[d, i]), float(s[i]), int(d)
    if 0 < i < len(s) - 1:
        row = prof[d : d + 1]
        best, best_s = _refine_max(lambda x: _log_weighted_abs(ks, row, tau, p, x)[0, 0], s[i - 1 : i + 2], vals[d, i - 1 : i + 2])
    if at_zero >= best:
        return at_zero, tuple(0j for _ in range(f.dim)), 0.0
    r = math.exp(best_s)
    return best, tuple(complex(x) for x in r * dirs[best_d]), r


def norm_bracket(f: TaylorPoly, params: GrowthParams) -> NormBracket:
    """Enclosure ``lower <= ||f||_{p,tau} <= upper`` with a witness point."""
    if f.is_zero():
        return NormBracket(0.0, 0.0, tuple(0j for _ in range(f.dim)), 0.0)
    ks, logA = _radial_log_coeffs(f)
    log_up, r_star = _radial_sup(ks, logA, params.tau, params.p)
    log_lo, witness, r = _witness_lower(f, params, r_star)
    lower = math.exp(log_lo)
    upper = max(math.exp(log_up), lower)
    return NormBracket(lower, upper, witness, r)


# --------------------------------------------------------------------------
# closed-form factors


def monomial_norm_bound(beta, params: GrowthParams) -> float:
    """``(|beta| / (e tau p))^{|beta|/p}``, the exact norm of ``z^beta`` for n = 1."""
    k = degree(beta)
    if k == 0:
        return 1.0
    p, tau = params.p, params.tau
    return math.exp((k / p) * math.log(k / (math.e * tau * p)))


def derivative_norm_bound(alpha, params: GrowthParams, n: int) -> float:
    """Factor in ``||d^alpha f||_{p, s_p tau} <= factor * ||f||_{p,tau}``."""
    k = degree(alpha)
    if k == 0:
        return 1.0
    p, tau = params.p, params.tau
    log_f = (
        math.log(factorial(alpha))
        - (k / p) * math.log(k)
        + (k / p) * math.log(math.e * tau * p)
        + k * math.log(2.0 * math.sqrt(n))
    )
    return math.exp(log_f)


def equivalence_factors(alpha, params: GrowthParams, n: int) -> Tuple[float, float, float]:
    """The chain ``low <= 1/|alpha|!^{1/q} <= high`` relating conditions (I) and (II)."""
    k = degree(alpha)
    if k < 1:
        raise ValueError("equivalence factors need |alpha| >= 1")
    p = params.p
    log_ratio = (k / p) * math.log(k) - math.log(factorial(alpha))
    high = math.exp(log_ratio)
    low = math.exp(log_ratio - k * math.log(n) - k / p)
    mid = math.exp(-params.inv_q * math.lgamma(k + 1))
    return low, mid, high


# --------------------------------------------------------------------------
# growth conditions

NORMAL, MINIMAL = "normal", "minimal"
CONDITIONS = ("I", "II", "III", "IV")


def _log_weight(alpha, params: GrowthParams, which: str) -> float:
    """log of the reciprocal of the epsilon-free right-hand factor.

    (I)/(III): ``|alpha|!^{1/q}``;  (II)/(IV): ``alpha! |alpha|^{-|alpha|/p}``.
    (I)/(II) are the pointwise forms of (III)/(IV); the sup over z is exactly
    the weighted norm, so both pairs share one computation.
    """
    k = degree(alpha)
    if which in ("I", "III"):
        return params.inv_q * math.lgamma(k + 1)
    if k == 0:
        return 0.0
    return math.log(factorial(alpha)) - (k / params.p) * math.log(k)


@dataclass
class Certificate:
    eps: float
    B: float
    C: float
    margin_by_degree: List[float]
    status: str = "ok"  # ok | violated | unknown
    decay: str = ""
    log_C_tail: Optional[float] = None

    @property
    def C_effective(self) -> float:
        """Best estimate of the constant over all degrees, including the tail."""
        if self.log_C_tail is None:
            return self.C
        return max(self.C, math.exp(min(self.log_C_tail, 700.0)))

    def to_dict(self) -> dict:
        return {
            "eps": self.eps,
            "B": self.B,
            "C": self.C,
            "status": self.status,
            "decay": self.decay,
            "log_C_tail": self.log_C_tail,
            "margin_by_degree": list(self.margin_by_degree),
        }


@dataclass
class ClassVerdict:
    mode: str
    condition: str
    status: str  # pass | fail | inconclusive
    certificates: List[Certificate] = field(default_factory=list)
    max_degree_checked: int = 0
    p: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "condition": self.condition,
            "status": self.status,
            "p": self.p,
            "certificates": [c.to_dict() for c in self.certificates],
            "max_degree_checked": self.max_degree_checked,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "ClassVerdict":
        certs = [
            Certificate(
                eps=c["eps"],
                B=c["B"],
                C=c["C"],
                margin_by_degree=list(c.get("margin_by_degree", [])),
                status=c.get("status", "ok"),
                decay=c.get("decay", ""),
                log_C_tail=c.get("log_C_tail"),
            )
            for c in obj.get("certificates", [])
        ]
        return cls(
            mode=obj["mode"],
            condition=obj["condition"],
            status=obj["status"],
            certificates=certs,
            max_degree_checked=obj.get("max_degree_checked", 0),
            p=obj.get("p"),
        )


@dataclass
class _Trend:
    kind: str  # terminating | non-increasing | super-decay | geometric | super-growth | short
    rate: float = 0.0  # mean log-increment per degree
    a: float = 0.0
    b: float = 0.0
    last_k: int = 0
    last_log: float = -math.inf


def _analyse_increments(log_d: Dict[int, float], N: int) -> _Trend:
    """Classify the large-degree behaviour of ``k -> log D_k``.

    Per-degree increments of ``log D_k`` taken over two-step spans in the
    top half of degrees are regressed on ``log k``.  A clearly negative
    slope means the sequence eventually decays faster than any geometric one,
    a clearly positive slope the opposite; otherwise the mean increment is the
    geometric rate.
    """
    nz = sorted(k for k, v in log_d.items() if v > -math.inf)
    if not nz:
        return _Trend("terminating")
    top_third = [k for k in nz if k >= N - N // 3]
    if not top_third or nz[-1] < N - N // 3:
        return _Trend("terminating", last_k=nz[-1], last_log=log_d[nz[-1]])
    window = [k for k in nz if k >= N // 2]
    if len(window) < 5:
        return _Trend("short", last_k=nz[-1], last_log=log_d[nz[-1]])
    # Spans of two consecutive steps cancel even/odd oscillation, which is
    # common for symbols built from powers of a second-order operator.
    mids, incs = [], []
    for k0, k1 in zip(window[:-2], window[2:]):
        mids.append(math.log(0.5 * (k0 + k1)))
        incs.append((log_d[k1] - log_d[k0]) / (k1 - k0))
    b, a = np.polyfit(mids, incs, 1)
    rate = float(np.mean(incs))
    if b <= -SLOPE_THRESHOLD:
        kind = "super-decay"
    elif b >= SLOPE_THRESHOLD:
        kind = "super-growth"
    else:
        kind = "geometric"
    return _Trend(kind, rate, float(a), float(b), nz[-1], log_d[nz[-1]])


def _non_increasing(log_c: Dict[int, float], N: int) -> bool:
    ks = sorted(k for k, v in log_c.items() if v > -math.inf and k >= N - N // 3)
    return all(log_c[k1] <= log_c[k0] + 1e-9 for k0, k1 in zip(ks[:-1], ks[1:]))


def _tail_peak(trend: _Trend, log_eps: float) -> Optional[float]:
    """Peak of the extrapolated log-margin beyond the last stored degree."""
    a, b = trend.a, trend.b
    # increment at degree j is a + b log(j + 1/2) - log eps; positive until j_star
    j_star = math.exp((log_eps - a) / b) - 0.5
    K0 = trend.last_k
    start = trend.last_log - K0 * log_eps
    if j_star <= K0:
        return None
    best = start
    for K in (math.floor(j_star), math.ceil(j_star) + 1):
        K = max(K, K0)
        val = start + (K - K0) * (a - log_eps) + b * (math.lgamma(K + 0.5) - math.lgamma(K0 + 0.5))
        best = max(best, val)
    return best


def _coefficient_items(symbol):
    return [(MultiIndex(a), f) for a, f in symbol.coeffs.items() if not f.is_zero()]


def _group_by_degree(items):
    out: Dict[int, list] = {}
    for a, f in items:
        out.setdefault(degree(a), []).append((a, f))
    return out


def _log_D(groups, params: GrowthParams, which: str) -> Dict[int, float]:
    """``k -> max_{|alpha|=k} log(||a_alpha||^{up}_{p,tau} * weight(alpha))``."""
    return {
        k: max(log_norm_upper(f, params) + _log_weight(a, params, which) for a, f in grp)
        for k, grp in groups.items()
    }


def _exp(x: float) -> float:
    return math.exp(x) if x < 709.0 else math.inf


def _normal_entry(log_d, N, eps, B) -> Certificate:
    log_eps = math.log(eps)
    log_c = {k: v - k * log_eps for k, v in log_d.items()}
    margins = [_exp(log_c[k]) if k in log_c else 0.0 for k in range(N + 1)]
    C = max(margins, default=0.0)
    trend = _analyse_increments(log_d, N)
    cert = Certificate(eps=eps, B=B, C=C, margin_by_degree=margins)
    if trend.kind == "terminating":
        cert.decay = "terminating"
    elif _non_increasing(log_c, N):
        cert.decay = "non-increasing"
    elif trend.kind == "super-decay":
        cert.decay = "super-geometric"
        cert.log_C_tail = _tail_peak(trend, log_eps)
    elif trend.kind == "geometric" and trend.rate - log_eps < -RATE_TOL:
        cert.decay = "geometric"
    elif trend.kind == "super-growth" or (
        trend.kind == "geometric" and trend.rate - log_eps > RATE_TOL
    ):
        cert.status = "violated"
        cert.decay = "growing"
    else:
        cert.status = "unknown"
        cert.decay = trend.kind
    return cert


def _log_key(cert: Certificate) -> float:
    base = math.log(cert.C) if cert.C > 0 else -math.inf
    if cert.log_C_tail is not None:
        base = max(base, cert.log_C_tail)
    return base


def _check_normal(groups, p, which, N, eps_grid, B_grid) -> Tuple[str, List[Certificate]]:
    cache: Dict[float, Dict[int, float]] = {}

    def log_d_at(B):
        if B not in cache:
            cache[B] = _log_D(groups, GrowthParams(p, B), which)
        return cache[B]

    step = B_grid[-1] / B_grid[-2] if len(B_grid) > 1 else 10.0
    certs, statuses = [], []
    for eps in eps_grid:
        tried = [_normal_entry(log_d_at(B), N, eps, B) for B in B_grid]
        B = B_grid[-1]
        # larger B only shrinks the norms; extend the search while nothing works
        while not any(c.status == "ok" for c in tried) and B * step <= B_CAP * (1 + 1e-12):
            B *= step
            tried.append(_normal_entry(log_d_at(B), N, eps, B))
        ok = [c for c in tried if c.status == "ok"]
        if ok:
            best = min(ok, key=_log_key)
            statuses.append("ok")
        elif all(c.status == "violated" for c in tried):
            best = tried[-1]
            statuses.append("violated")
        else:
            best = next(c for c in reversed(tried) if c.status == "unknown")
            statuses.append("unknown")
        certs.append(best)
    if "violated" in statuses:
        return "fail", certs
    if all(s == "ok" for s in statuses):
        return "pass", certs
    return "inconclusive", certs


def _check_minimal(groups, p, which, N, eps_grid) -> Tuple[str, List[Certificate]]:
    certs, statuses = [], []
    for eps in eps_grid:
        log_d = _log_D(groups, GrowthParams(p, eps), which)
        trend = _analyse_increments(log_d, N)
        # smallest B with D_k <= B^{k+1} on the stored degrees
        log_B = max((v / (k + 1) for k, v in log_d.items()), default=-math.inf)
        cert = Certificate(eps=eps, B=0.0, C=0.0, margin_by_degree=[])
        if trend.kind == "super-growth":
            cert.status, cert.decay = "violated", "growing"
        elif trend.kind == "geometric":
            log_B = max(log_B, trend.rate)
            cert.decay = "geometric"
        elif trend.kind == "short":
            cert.status, cert.decay = "unknown", "short"
        else:
            cert.decay = "terminating" if trend.kind == "terminating" else "super-geometric"
        B = _exp(log_B) if log_B > -math.inf else 0.0
        cert.B = cert.C = B
        cert.margin_by_degree = [
            _exp(log_d[k] - (k + 1) * log_B) if k in log_d else 0.0 for k in range(N + 1)
        ]
        certs.append(cert)
        statuses.append("ok" if cert.status == "ok" else cert.status)
    if "violated" in statuses:
        return "fail", certs
    if all(s == "ok" for s in statuses):
        return "pass", certs
    return "inconclusive", certs


def check_condition(
    symbol,
    p: float,
    mode: str = NORMAL,
    which: str = "IV",
    eps_grid: Sequence[float] = DEFAULT_EPS_GRID,
    B_grid: Sequence[float] = DEFAULT_B_GRID,
) -> ClassVerdict:
    """Finite-degree check of one growth condition for ``symbol``.

    ``symbol`` needs ``dim``, ``max_order`` and ``coeffs`` (multi-index ->
    TaylorPoly).  The verdict is ``pass`` when every epsilon admits a
    constant with evidence of decay at the top degrees, ``fail`` when some
    epsilon shows geometric (or faster) growth for every admissible B, and
    ``inconclusive`` otherwise.  In minimal mode ``eps`` is the norm type and
    the certificate's ``B`` absorbs the constant as ``B^{|alpha|+1}``.
    """
    which = which.rstrip("0").rstrip("_")
    if which not in CONDITIONS:
        raise ValueError(f"unknown condition {which!r}")
    if mode not in (NORMAL, MINIMAL):
        raise ValueError(f"unknown mode {mode!r}")
    if not eps_grid or not B_grid:
        raise ValueError("grids must be nonempty")
    eps_grid = sorted(float(e) for e in eps_grid)[::-1]
    B_grid = sorted(float(b) for b in B_grid)
    label = which if mode == NORMAL else which + "0"
    N = symbol.max_order
    items = _coefficient_items(symbol)
    if not items:
        certs = [Certificate(eps=e, B=B_grid[0], C=0.0, margin_by_degree=[0.0] * (N + 1), decay="terminating") for e in eps_grid]
        return ClassVerdict(mode, label, "pass", certs, N, p)
    groups = _group_by_degree(items)
    if mode == NORMAL:
        status, certs = _check_normal(groups, p, which, N, eps_grid, B_grid)
    else:
        status, certs = _check_minimal(groups, p, which, N, eps_grid)
    return ClassVerdict(mode, label, status, certs, N, p)
