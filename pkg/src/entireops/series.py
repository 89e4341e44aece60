"""Truncated multivariate Taylor series with complex coefficients.

``TaylorPoly`` stores the monomial coefficients ``c_mu = f_mu / mu!`` of

    f(z) = sum_mu c_mu z^mu,     |mu| <= trunc,

in a sparse dict keyed by :class:`~entireops.multiindex.MultiIndex`.  The
truncation ``trunc`` is the total degree up to which the coefficients are
known; anything above it is unknown, not zero.  Operations that lose
information (differentiation, products) lower the truncation accordingly.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Sequence

from .multiindex import MultiIndex, binomial, enumerate_below, enumerate_degree, graded_key

DROP_BELOW = 1e-300


def _clean(coeffs: Mapping, dim: int, trunc: int) -> Dict[MultiIndex, complex]:
    out = {}
    for mu, c in coeffs.items():
        mu = MultiIndex(mu)
        if len(mu) != dim:
            raise ValueError(f"index {tuple(mu)} has dimension {len(mu)}, expected {dim}")
        if sum(mu) > trunc:
            raise ValueError(f"index {tuple(mu)} exceeds truncation {trunc}")
        c = complex(c)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise ValueError(f"non-finite coefficient at {tuple(mu)}: {c!r}")
        if abs(c) < DROP_BELOW:
            continue
        out[mu] = c
    return {mu: out[mu] for mu in sorted(out, key=graded_key)}


@dataclass(frozen=True, eq=False)
class TaylorPoly:
    dim: int
    trunc: int
    coeffs: Dict[MultiIndex, complex] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.trunc < 0:
            raise ValueError("trunc must be >= 0")
        object.__setattr__(self, "coeffs", _clean(self.coeffs, self.dim, self.trunc))

    def __getitem__(self, mu) -> complex:
        return self.coeffs.get(MultiIndex(mu), 0j)

    def __iter__(self):
        return iter(self.coeffs.items())

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        terms = ", ".join(f"{list(mu)}: {c:.6g}" for mu, c in list(self.coeffs.items())[:6])
        more = ", ..." if len(self.coeffs) > 6 else ""
        return f"TaylorPoly(dim={self.dim}, trunc={self.trunc}, {{{terms}{more}}})"

    @property
    def degree(self) -> int:
        """Largest total degree with a nonzero coefficient; -1 for zero."""
        return max((sum(mu) for mu in self.coeffs), default=-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, *z):
        if len(z) == 1 and isinstance(z[0], (list, tuple)):
            z = z[0]
        return evaluate(self, z)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, TaylorPoly):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TaylorPoly):
            return NotImplemented
        return (self.dim, self.trunc, self.coeffs) == (other.dim, other.trunc, other.coeffs)

    __hash__ = None


def zero(dim: int, trunc: int) -> TaylorPoly:
    return TaylorPoly(dim, trunc, {})


def constant(dim: int, c, trunc: int) -> TaylorPoly:
    return TaylorPoly(dim, trunc, {MultiIndex.zero(dim): c})


def monomial(dim: int, beta, c=1.0, trunc: int | None = None) -> TaylorPoly:
    """``c * z^beta``; ``trunc`` defaults to ``|beta|``."""
    beta = MultiIndex(beta)
    if len(beta) != dim:
        raise ValueError(f"index {tuple(beta)} does not have dimension {dim}")
    if trunc is None:
        trunc = sum(beta)
    if sum(beta) > trunc:
        raise ValueError(f"monomial degree {sum(beta)} exceeds truncation {trunc}")
    return TaylorPoly(dim, trunc, {beta: c})


def variable(dim: int, j: int, trunc: int) -> TaylorPoly:
    return monomial(dim, MultiIndex.unit(dim, j), 1.0, trunc)


def exp_linear(b: Sequence, c0=0.0, trunc: int = 40) -> TaylorPoly:
    """Taylor series of ``exp(c0 + b . z)`` truncated at ``trunc``."""
    dim = len(b)
    b = [complex(x) for x in b]
    scale0 = cmath.exp(c0)
    coeffs = {}
    for d in range(trunc + 1):
        for mu in enumerate_degree(dim, d):
            c = scale0
            for bj, m in zip(b, mu):
                if m:
                    c *= bj**m / math.factorial(m)
            coeffs[mu] = c
    return TaylorPoly(dim, trunc, coeffs)


def with_trunc(f: TaylorPoly, trunc: int) -> TaylorPoly:
    """Same function with a different truncation.

    Lowering drops coefficients above ``trunc``.  Raising is only sound when
    ``f`` is an exact polynomial, which the caller asserts by calling this.
    """
    return TaylorPoly(f.dim, trunc, {mu: c for mu, c in f.coeffs.items() if sum(mu) <= trunc})


def _check_same_dim(f: TaylorPoly, g: TaylorPoly):
    if f.dim != g.dim:
        raise ValueError(f"dimension mismatch: {f.dim} vs {g.dim}")


def evaluate(f: TaylorPoly, z: Sequence) -> complex:
    """``sum c_mu z^mu`` accumulated low degree first."""
    if len(z) != f.dim:
        raise ValueError(f"point has dimension {len(z)}, expected {f.dim}")
    z = [complex(x) for x in z]
    total = 0j
    for mu, c in f.coeffs.items():
        term = c
        for zj, m in zip(z, mu):
            if m:
                term *= zj**m
        total += term
    return total


def derivative(f: TaylorPoly, alpha) -> TaylorPoly:
    """``d^alpha f``; truncation drops by ``|alpha|`` (floor 0)."""
    alpha = MultiIndex(alpha)
    if len(alpha) != f.dim:
        raise ValueError(f"derivative index {tuple(alpha)} does not have dimension {f.dim}")
    k = sum(alpha)
    out = {}
    for mu, c in f.coeffs.items():
        if all(m >= a for m, a in zip(mu, alpha)):
            ff = 1
            for m, a in zip(mu, alpha):
                ff *= math.perm(m, a)
            out[MultiIndex(m - a for m, a in zip(mu, alpha))] = c * ff
    return TaylorPoly(f.dim, max(f.trunc - k, 0), out)


def add(f: TaylorPoly, g: TaylorPoly) -> TaylorPoly:
    _check_same_dim(f, g)
    trunc = min(f.trunc, g.trunc)
    out: Dict[MultiIndex, complex] = {}
    for h in (f, g):
        for mu, c in h.coeffs.items():
            if sum(mu) <= trunc:
                out[mu] = out.get(mu, 0j) + c
    return TaylorPoly(f.dim, trunc, out)


def scale(f: TaylorPoly, c) -> TaylorPoly:
    c = complex(c)
    return TaylorPoly(f.dim, f.trunc, {mu: c * v for mu, v in f.coeffs.items()})


def mul(f: TaylorPoly, g: TaylorPoly) -> TaylorPoly:
    """Cauchy product truncated at ``min(f.trunc, g.trunc)``."""
    _check_same_dim(f, g)
    trunc = min(f.trunc, g.trunc)
    out: Dict[tuple, complex] = {}
    g_items = [(mu, sum(mu), c) for mu, c in g.coeffs.items()]
    for mu, cf in f.coeffs.items():
        dmu = sum(mu)
        if dmu > trunc:
            continue
        for nu, dnu, cg in g_items:
            if dmu + dnu > trunc:
                break  # g_items is graded
            key = tuple(a + b for a, b in zip(mu, nu))
            out[key] = out.get(key, 0j) + cf * cg
    return TaylorPoly(f.dim, trunc, out)


def power(f: TaylorPoly, k: int) -> TaylorPoly:
    out = constant(f.dim, 1.0, f.trunc)
    for _ in range(k):
        out = mul(out, f)
    return out


def translate(f: TaylorPoly, a: Sequence) -> TaylorPoly:
    """Re-expansion of ``z -> f(z + a)``; exact when ``f`` is a polynomial."""
    if len(a) != f.dim:
        raise ValueError(f"shift has dimension {len(a)}, expected {f.dim}")
    a = [complex(x) for x in a]
    out: Dict[MultiIndex, complex] = {}
    for mu, c in f.coeffs.items():
        for nu in enumerate_below(mu):
            w = c * binomial(mu, nu)
            for aj, m, v in zip(a, mu, nu):
                if m - v:
                    w *= aj ** (m - v)
            out[nu] = out.get(nu, 0j) + w
    return TaylorPoly(f.dim, f.trunc, out)


def dilate(f: TaylorPoly, lam) -> TaylorPoly:
    """``z -> f(lam * z)``."""
    lam = complex(lam)
    return TaylorPoly(f.dim, f.trunc, {mu: c * lam ** sum(mu) for mu, c in f.coeffs.items()})


def tail(f: TaylorPoly, m: int) -> TaylorPoly:
    """The part of ``f`` of total degree ``>= m``."""
    return TaylorPoly(f.dim, f.trunc, {mu: c for mu, c in f.coeffs.items() if sum(mu) >= m})


def taylor_tail_norm(f: TaylorPoly, m: int, params) -> float:
    """Upper bound for ``||f - (Taylor part below degree m)||_{p,tau}``."""
    from .growth import norm_upper

    if m > f.trunc + 1:
        raise ValueError(f"tail degree {m} beyond truncation {f.trunc}")
    return norm_upper(tail(f, m), params)


def max_abs_diff(f: TaylorPoly, g: TaylorPoly, upto: int | None = None) -> float:
    """Largest coefficient difference over degrees both sides know."""
    _check_same_dim(f, g)
    lim = min(f.trunc, g.trunc) if upto is None else upto
    keys = set(f.coeffs) | set(g.coeffs)
    return max((abs(f[mu] - g[mu]) for mu in keys if sum(mu) <= lim), default=0.0)


def to_dict(f: TaylorPoly) -> dict:
    return {
        "dim": f.dim,
        "trunc": f.trunc,
        "coeffs": [
            {"alpha": list(mu), "re": c.real, "im": c.imag} for mu, c in f.coeffs.items()
        ],
    }


def from_dict(obj: Mapping) -> TaylorPoly:
    for key in ("dim", "trunc", "coeffs"):
        if key not in obj:
            raise KeyError(f"TaylorPoly object is missing field {key!r}")
    coeffs: Dict[MultiIndex, complex] = {}
    for i, entry in enumerate(obj["coeffs"]):
        if "alpha" not in entry:
            raise KeyError(f"coefficient entry {i} is missing field 'alpha'")
        mu = MultiIndex(entry["alpha"])
        coeffs[mu] = coeffs.get(mu, 0j) + complex(float(entry.get("re", 0.0)), float(entry.get("im", 0.0)))
    return TaylorPoly(int(obj["dim"]), int(obj["trunc"]), coeffs)


def from_coefficients(coeffs: Iterable, trunc: int | None = None) -> TaylorPoly:
    """One-variable shorthand: ``[c0, c1, ...]``."""
    coeffs = list(coeffs)
    if trunc is None:
        trunc = max(len(coeffs) - 1, 0)
    return TaylorPoly(1, trunc, {(k,): c for k, c in enumerate(coeffs)})
