import math

import pytest
from hypothesis import given, strategies as st

from entireops.multiindex import (
    MultiIndex,
    binomial,
    degree,
    enumerate_below,
    enumerate_degree,
    enumerate_upto,
    factorial,
    graded_key,
    leq,
    sub,
)

from conftest import multi_indices


def test_construction_rejects_bad_entries():
    with pytest.raises(ValueError):
        MultiIndex([1, -1])
    with pytest.raises(ValueError):
        MultiIndex([])
    with pytest.raises(ValueError):
        MultiIndex([1.5])


def test_basic_values():
    a = MultiIndex([2, 1, 3])
    assert degree(a) == 6
    assert factorial(a) == 2 * 1 * 6
    assert a.dim == 3
    assert MultiIndex.unit(3, 1, 4) == (0, 4, 0)
    assert MultiIndex.zero(2) == (0, 0)


def test_graded_order_example():
    assert enumerate_degree(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert enumerate_upto(2, 1) == [(0, 0), (1, 0), (0, 1)]


@pytest.mark.parametrize("n,k", [(1, 5), (2, 4), (3, 3), (4, 2)])
def test_enumeration_counts(n, k):
    # stars and bars
    assert len(enumerate_degree(n, k)) == math.comb(n + k - 1, k)
    assert len(enumerate_upto(n, k)) == math.comb(n + k, k)
    assert len(set(enumerate_upto(n, k))) == len(enumerate_upto(n, k))


def test_sub_requires_order():
    assert sub((3, 2), (1, 2)) == (2, 0)
    with pytest.raises(ValueError):
        sub((1, 0), (0, 1))
    with pytest.raises(ValueError):
        MultiIndex([1, 1]) - MultiIndex([2, 0])


def test_binomial_frozen():
    assert binomial((4, 2), (2, 1)) == 6 * 2
    assert binomial((1, 1), (2, 0)) == 0


@given(multi_indices(3, 4))
def test_enumerate_below_is_the_order_ideal(alpha):
    below = enumerate_below(alpha)
    assert len(below) == math.prod(a + 1 for a in alpha)
    assert all(leq(b, alpha) for b in below)
    assert below == sorted(below, key=graded_key)
    # Vandermonde: sum_beta C(alpha, beta) = 2^|alpha|
    assert sum(binomial(alpha, b) for b in below) == 2 ** degree(alpha)


@given(multi_indices(2, 5), multi_indices(2, 5), multi_indices(2, 5))
def test_partial_order_axioms(a, b, c):
    assert leq(a, a)
    if leq(a, b) and leq(b, a):
        assert a == b
    if leq(a, b) and leq(b, c):
        assert leq(a, c)
    assert leq(a, a + b)
    assert (a + b) - b == a


@given(multi_indices(3, 5), st.data())
def test_multinomial_integrality(alpha, data):
    beta = data.draw(st.sampled_from(enumerate_below(alpha)))
    q, r = divmod(factorial(alpha), factorial(beta) * factorial(alpha - beta))
    assert r == 0 and q == binomial(alpha, beta)
