import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from entireops import builtin, growth, operator, series
from entireops.growth import GrowthParams
from entireops.multiindex import MultiIndex
from entireops.operator import CertificateError, OperatorSymbol

from conftest import polys, random_poly


def finite_op(rng, dim, order, coeff_degree, trunc):
    from entireops.multiindex import enumerate_upto

    coeffs = {a: random_poly(rng, dim, coeff_degree, trunc) for a in enumerate_upto(dim, order)}
    return OperatorSymbol(dim, order, coeffs)


def test_symbol_validation():
    with pytest.raises(ValueError):
        OperatorSymbol(1, 1, {(2,): series.constant(1, 1.0, 2)})
    with pytest.raises(ValueError):
        OperatorSymbol(2, 1, {(1,): series.constant(1, 1.0, 2)})
    P = OperatorSymbol(1, 3, {(1,): series.zero(1, 2)})
    assert P.order == -1 and P[(1,)] is None


def test_apply_derivative_operator():
    # (z d) z^3 = 3 z^3
    P = OperatorSymbol(1, 1, {(1,): series.variable(1, 0, 10)})
    r = operator.apply(P, series.monomial(1, (3,), 1.0, 10)).result
    assert r[(3,)] == 3 and r.degree == 3


def test_identity_and_multiplication():
    f = series.from_coefficients([1, 2, 3], 8)
    assert series.max_abs_diff(operator.apply(operator.identity(1, 8), f).result, f) == 0
    g = series.from_coefficients([0, 1], 8)
    assert operator.apply(operator.multiplication(g), f).result[(3,)] == 3


def test_apply_only_uses_terms_up_to_degree():
    P = builtin.translation_symbol([1.0], 20, 20)
    rep = operator.apply(P, series.monomial(1, (3,), 1.0, 20))
    assert rep.terms_used == 4


def test_certificate_tail_and_too_weak():
    P = builtin.translation_symbol([1.0], 16, 16)
    cert = operator.classify(P, 1.0)
    f = series.from_coefficients([1, -1, 0.5], 16)
    rep = operator.apply(P, f, GrowthParams(1, 1), cert)
    tp = rep.tail_params
    assert tp["ratio"] < 1
    assert tp["ratio"] == pytest.approx(4 * math.e * tp["eps"], rel=1e-14)
    assert rep.tail_bound > 0
    with pytest.raises(CertificateError, match="too weak"):
        operator.apply(P, f, GrowthParams(1, 1000), cert)
    with pytest.raises(ValueError):
        operator.apply(P, f, GrowthParams(2, 1), cert)


def test_minimal_certificate_not_usable_for_tail():
    P = builtin.translation_symbol([1.0], 8, 8)
    cert = operator.classify(P, 1.0, mode="minimal")
    with pytest.raises(ValueError):
        operator.apply(P, series.constant(1, 1.0, 8), GrowthParams(1, 1), cert)


def test_compose_weyl_relation():
    # d o z = z d + 1
    D = OperatorSymbol(1, 1, {(1,): series.constant(1, 1.0, 6)})
    Z = operator.multiplication(series.variable(1, 0, 6))
    C = operator.compose(D, Z, 2)
    assert C[(0,)][(0,)] == 1
    assert C[(1,)][(1,)] == 1
    assert C.order == 1


def test_translation_group_law():
    a, b = 0.3 + 0.2j, -0.7 + 0.1j
    C = operator.compose(builtin.translation_symbol([a], 10, 10), builtin.translation_symbol([b], 10, 10), 10)
    assert operator.max_coeff_diff(C, builtin.translation_symbol([a + b], 10, 10)) < 1e-12


def test_json_roundtrip():
    rng = np.random.default_rng(3)
    P = finite_op(rng, 2, 2, 3, 6)
    Q = operator.from_dict(operator.to_dict(P))
    assert operator.max_coeff_diff(P, Q) == 0
    with pytest.raises(KeyError, match="max_order"):
        operator.from_dict({"dim": 1, "terms": []})


@given(st.integers(0, 10_000), polys(1, 6, trunc=12))
def test_apply_compose_associativity(seed, f):
    rng = np.random.default_rng(seed)
    P, Q = finite_op(rng, 1, 2, 2, 12), finite_op(rng, 1, 2, 2, 12)
    lhs = operator.apply(operator.compose(P, Q, 4), f).result
    rhs = operator.apply(P, operator.apply(Q, f).result).result
    assert series.max_abs_diff(lhs, rhs) < 1e-9


@given(st.integers(0, 10_000))
def test_compose_associative(seed):
    rng = np.random.default_rng(seed)
    P, Q, R = (finite_op(rng, 1, 1, 1, 10) for _ in range(3))
    lhs = operator.compose(operator.compose(P, Q, 2), R, 3)
    rhs = operator.compose(P, operator.compose(Q, R, 2), 3)
    assert operator.max_coeff_diff(lhs, rhs) < 1e-10


@given(polys(1, 5, trunc=10), polys(1, 5, trunc=10))
def test_apply_is_linear(f, g):
    P = builtin.dilation_symbol(0.5, 1, 8, 10)
    lhs = operator.apply(P, series.add(f, g)).result
    rhs = series.add(operator.apply(P, f).result, operator.apply(P, g).result)
    assert series.max_abs_diff(lhs, rhs) < 1e-12
