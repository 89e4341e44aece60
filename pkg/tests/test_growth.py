import json
import math

import pytest
from hypothesis import given, strategies as st

from entireops import growth, operator, series
from entireops.growth import ClassVerdict, GrowthParams
from entireops.multiindex import MultiIndex

from conftest import multi_indices, polys


def test_params_constants():
    assert GrowthParams(0.5, 1).s_p == 1.0
    assert GrowthParams(3, 1).s_p == 4.0
    assert GrowthParams(1, 1).inv_q == 0.0
    assert GrowthParams(2, 1).inv_q == 0.5
    with pytest.raises(ValueError):
        GrowthParams(0, 1)


@pytest.mark.parametrize("k,p,tau", [(3, 1, 1), (4, 2, 0.5), (5, 0.5, 2)])
def test_monomial_bracket_closed_form(k, p, tau):
    # sup_r r^k exp(-tau r^p) is attained at r^p = k / (tau p)
    r = (k / (tau * p)) ** (1 / p)
    expected = r**k * math.exp(-tau * r**p)
    b = growth.norm_bracket(series.monomial(1, (k,)), GrowthParams(p, tau))
    assert b.lower == pytest.approx(expected, rel=1e-9)
    assert b.upper == pytest.approx(expected, rel=1e-9)
    assert growth.monomial_norm_bound((k,), GrowthParams(p, tau)) == pytest.approx(expected, rel=1e-12)


def test_frozen_z_cubed():
    # 27 e^{-3}
    assert growth.norm_upper(series.monomial(1, (3,)), GrowthParams(1, 1)) == pytest.approx(1.3442508459323270, rel=1e-12)


def test_exponential_has_unit_norm_at_type_one():
    # |e^z| e^{-|z|} <= 1 with equality on the positive axis; the truncation only lowers it
    f = series.exp_linear([1.0], 0.0, 60)
    b = growth.norm_bracket(f, GrowthParams(1, 1))
    assert b.upper == pytest.approx(1.0, abs=1e-12)
    assert b.lower == pytest.approx(1.0, abs=1e-9)
    assert b.lower <= b.upper


def test_two_variable_witness_is_inside():
    f = series.TaylorPoly(2, 4, {(1, 1): 1.0, (2, 0): -0.5j})
    prm = GrowthParams(2, 1)
    b = growth.norm_bracket(f, prm)
    z = b.witness
    r = math.sqrt(sum(abs(x) ** 2 for x in z))
    assert abs(f(z)) * math.exp(-r**2) == pytest.approx(b.lower, rel=1e-9)
    assert b.lower <= b.upper * (1 + 1e-12)


def test_derivative_bound_frozen():
    # 2! 2^{-2} (e)^2 2^2 = 2 e^2 at p = tau = 1, n = 1
    assert growth.derivative_norm_bound((2,), GrowthParams(1, 1), 1) == pytest.approx(2 * math.e**2, rel=1e-14)
    assert growth.derivative_norm_bound((0, 0), GrowthParams(1, 1), 2) == 1.0


def test_equivalence_factors_frozen():
    low, mid, high = growth.equivalence_factors((2,), GrowthParams(2, 1), 1)
    # 2^{2/2} / 2! * e^{-2/2}
    assert low == pytest.approx(math.exp(-1), rel=1e-14)
    assert mid == pytest.approx(1 / math.sqrt(2), rel=1e-14)
    assert high == pytest.approx(1.0, rel=1e-14)
    with pytest.raises(ValueError):
        growth.equivalence_factors((0,), GrowthParams(1, 1), 1)


@given(multi_indices(2, 6), st.sampled_from([0.5, 1.0, 2.0, 3.0]))
def test_equivalence_chain_orders(alpha, p):
    if sum(alpha) == 0:
        return
    low, mid, high = growth.equivalence_factors(alpha, GrowthParams(p, 1), 2)
    assert low <= mid * (1 + 1e-12)
    assert mid <= high * (1 + 1e-12)


@given(polys(1, 6), polys(1, 6), st.sampled_from([0.5, 1.0, 2.0]))
def test_submultiplicative(f, g, p):
    tau = 0.7
    lhs = growth.norm_upper(series.mul(f, g), GrowthParams(p, 2 * tau))
    rhs = growth.norm_upper(f, GrowthParams(p, tau)) * growth.norm_upper(g, GrowthParams(p, tau))
    assert lhs <= rhs * (1 + 1e-9) + 1e-300


@given(polys(2, 5))
def test_bracket_is_ordered(f):
    b = growth.norm_bracket(f, GrowthParams(1.5, 0.5))
    assert 0 <= b.lower <= b.upper


def _op(coeffs, N):
    return operator.OperatorSymbol(1, N, {MultiIndex((k,)): c for k, c in coeffs.items()})


def test_zero_operator_passes_every_condition():
    Z = operator.zero_operator(2, 6)
    for mode in ("normal", "minimal"):
        for which in growth.CONDITIONS:
            v = growth.check_condition(Z, 1.0, mode=mode, which=which)
            assert v.status == "pass"
            assert all(c.C == 0 for c in v.certificates)


def test_sum_of_all_derivatives_is_rejected_at_order_one():
    # a_k = 1: needs k! k^{-k} <= C eps^k for small eps, impossible
    P = _op({k: series.constant(1, 1.0, 8) for k in range(25)}, 24)
    assert growth.check_condition(P, 1.0).status == "fail"
    assert growth.check_condition(P, 2.0, mode="minimal").status == "fail"
    # on functions of order 1/2 the same operator is fine
    assert growth.check_condition(P, 0.5).status == "pass"


def test_finite_order_operator_passes():
    P = _op({0: series.from_coefficients([1, 2], 4), 2: series.constant(1, -0.5, 4)}, 24)
    for which in growth.CONDITIONS:
        assert growth.check_condition(P, 1.0, which=which).status == "pass"


def test_labels_and_json_roundtrip():
    P = _op({1: series.constant(1, 1.0, 4)}, 6)
    v = growth.check_condition(P, 1.0, mode="minimal", which="II")
    assert v.condition == "II0"
    back = ClassVerdict.from_dict(json.loads(json.dumps(v.to_dict())))
    assert back.to_dict() == v.to_dict()
    with pytest.raises(ValueError):
        growth.check_condition(P, 1.0, which="V")


def test_equivalence_factors_two_variables():
    low, mid, high = growth.equivalence_factors((1, 1), GrowthParams(2, 1), 2)
    assert low == pytest.approx(2 / (4 * math.e), rel=1e-14)
    assert mid == pytest.approx(1 / math.sqrt(2), rel=1e-14)
    assert high == pytest.approx(2.0, rel=1e-14)
    assert growth.equivalence_factors((1,), GrowthParams(1, 1), 1) == pytest.approx((math.exp(-1), 1.0, 1.0))


def test_monomial_bound_frozen():
    assert growth.monomial_norm_bound((2,), GrowthParams(2, 1)) == pytest.approx(math.exp(-1), rel=1e-14)
    assert growth.monomial_norm_bound((0, 0), GrowthParams(2, 1)) == 1.0
    assert growth.norm_bracket(series.constant(1, 1.0, 3), GrowthParams(1, 1)).upper == 1.0
    z = growth.norm_bracket(series.zero(2, 3), GrowthParams(1, 1))
    assert (z.lower, z.upper) == (0.0, 0.0)


def test_derivative_bound_majorises_exponential():
    f = series.exp_linear([1.0], 0.0, 40)
    prm = GrowthParams(1, 1)
    assert growth.norm_upper(f, prm) <= 1 + 1e-9
    assert growth.norm_upper(series.derivative(f, (1,)), prm) <= growth.derivative_norm_bound((1,), prm, 1)


def test_small_examples_pass():
    from entireops import builtin

    T = builtin.translation_symbol([1.0], 16, 16)
    assert growth.check_condition(T, 1.0, which="III").status == "pass"
    D = builtin.dilation_symbol(1.0, 1, 12, 12)
    v = growth.check_condition(D, 1.0, which="IV")
    assert v.status == "pass"
    for c in v.certificates:
        # a pass certificate satisfies its inequality at every stored degree
        assert max(c.margin_by_degree) <= c.C * (1 + 1e-12)
