import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qaskey import InvalidParams, NonConvergence, ParameterChain, index_sum
from qaskey.qcore import as_multi_index, qpochhammer, qpochhammer_inf, qpochhammer_multi

import mp_oracle

# mpmath at 40 digits (see mp_oracle.py)
QQ_INF_HALF = 0.28878809508660242128
Q09_INF = 1.286067434276613075e-6


def test_qpochhammer_examples():
    assert qpochhammer(0.7, 0.5, 0) == 1
    assert qpochhammer(0.7, 0.5, 1) == pytest.approx(0.3, rel=1e-15)
    assert qpochhammer(0.5, 0.5, 2) == pytest.approx(0.375, rel=1e-15)


def test_qpochhammer_rejects_negative_n():
    with pytest.raises(ValueError):
        qpochhammer(0.5, 0.5, -1)


def test_qpochhammer_inf_examples():
    assert qpochhammer_inf(0.0, 0.5, 1e-15) == 1
    assert qpochhammer_inf(0.5, 0.5, 1e-15) == pytest.approx(QQ_INF_HALF, rel=1e-15)
    v = qpochhammer_inf(0.9, 0.9, 1e-15)
    assert v > 0
    assert v == pytest.approx(Q09_INF, rel=5e-14)


def test_qq_inf_matches_pentagonal_series():
    ref = float(mp_oracle.euler_pentagonal(0.5))
    assert ref == pytest.approx(QQ_INF_HALF, rel=1e-16)
    assert qpochhammer_inf(0.5, 0.5) == pytest.approx(ref, rel=1e-15)


def test_qpochhammer_inf_partial_product_oracle():
    for a, q in [(0.5, 0.5), (0.9, 0.9), (-0.7, 0.3), (0.3 + 0.4j, 0.6)]:
        ref = np.prod([1 - a * q**k for k in range(2000)])
        assert abs(qpochhammer_inf(a, q) - ref) <= 1e-14 * abs(ref)


def test_qpochhammer_inf_nonconvergence():
    with pytest.raises(NonConvergence):
        qpochhammer_inf(0.5, 0.999, max_terms=100)


def test_qpochhammer_broadcasts():
    a = np.array([0.1, 0.2j, -0.5])
    out = qpochhammer_inf(a, 0.5)
    assert out.shape == (3,)
    assert out[1] == pytest.approx(qpochhammer_inf(0.2j, 0.5), rel=1e-15)
    assert qpochhammer(a, 0.5, 3)[2] == pytest.approx(qpochhammer(-0.5, 0.5, 3), rel=1e-15)


def test_qpochhammer_multi_examples():
    assert qpochhammer_multi([0.2, 0.3], 0.5, 0) == 1
    assert qpochhammer_multi([0.5], 0.5, 2) == qpochhammer(0.5, 0.5, 2)
    assert qpochhammer_multi([0.2, 0.3], 0.5, 1) == pytest.approx(0.56, rel=1e-15)
    assert qpochhammer_multi([0.5, 0.2], 0.5, math.inf) == pytest.approx(
        qpochhammer_inf(0.5, 0.5) * qpochhammer_inf(0.2, 0.5), rel=1e-15)


reals = st.floats(-0.99, 0.99)
bases = st.floats(0.05, 0.95)


@given(reals, bases, st.integers(0, 20), st.integers(0, 20))
def test_finite_product_splits(a, q, n, m):
    lhs = qpochhammer(a, q, n + m)
    rhs = qpochhammer(a, q, n) * qpochhammer(a * q**n, q, m)
    assert abs(lhs - rhs) <= 1e-13 * abs(lhs) + 1e-300


@settings(max_examples=50)
@given(reals, bases, st.integers(0, 30))
def test_infinite_product_splits(a, q, n):
    lhs = qpochhammer_inf(a, q)
    rhs = qpochhammer(a, q, n) * qpochhammer_inf(a * q**n, q)
    assert abs(lhs - rhs) <= 1e-12 * abs(lhs)


def test_chain_product_examples():
    ch = ParameterChain(0.5, 0.3, 0.2, -0.4, 0.1, (0.5, 0.4))
    assert ch.chain_product(3, 2) == 1
    assert ch.chain_product(2, 2) == 0.5
    assert ch.chain_product(2, 3) == pytest.approx(0.2, rel=1e-15)
    with pytest.raises(IndexError):
        ch.chain_product(2, 4)
    with pytest.raises(IndexError):
        ch.chain_product(1, 2)


def test_chain_boundary_squares_are_products():
    ch = ParameterChain(0.5, 0.3, 0.2, -0.4, 0.1, (0.5,))
    assert ch.square(1) == pytest.approx(0.06)
    assert ch.square(3) == pytest.approx(-0.04)  # c*d < 0 stays a signed product
    assert ch.chain_product_squared(1, 3) == pytest.approx(0.06 * 0.25 * -0.04)
    assert ch.chain_product_squared(2, 1) == 1


@given(st.lists(st.floats(-0.9, 0.9), min_size=1, max_size=5), st.data())
def test_chain_product_telescopes(chain, data):
    ch = ParameterChain(0.5, 0.3, 0.2, -0.4, 0.1, tuple(chain))
    s = ch.s
    k = data.draw(st.integers(2, s))
    j = data.draw(st.integers(2, k))
    assert ch.chain_product(j, k) == pytest.approx(ch.coupling(j) * ch.chain_product(j + 1, k),
                                                   rel=1e-15, abs=1e-300)


def test_index_sum_examples():
    n = (2, 3, 1)
    assert index_sum(n, 1, 3) == 6
    assert index_sum(n, 4, 3) == 0
    assert index_sum(n, 2, 3) == 4
    with pytest.raises(IndexError):
        index_sum(n, 1, 4)
    with pytest.raises(IndexError):
        index_sum(n, 3, 1)


@given(st.lists(st.integers(0, 10), min_size=1, max_size=6), st.data())
def test_index_sum_telescopes(n, data):
    s = len(n)
    k = data.draw(st.integers(1, s))
    j = data.draw(st.integers(1, k))
    assert index_sum(n, j, k) == n[j - 1] + index_sum(n, j + 1, k)


def test_admissibility():
    with pytest.raises(InvalidParams, match=r"\|a_2\|"):
        ParameterChain(0.5, 0.3, 0.2, -0.4, 0.1, (1.0,)).check_admissible()
    for q in (0.0, 1.0, -0.5, 0.5j):
        with pytest.raises(InvalidParams):
            ParameterChain(q, 0.3, 0.2, -0.4, 0.1)


def test_multi_index_validation():
    assert as_multi_index([1, 2]) == (1, 2)
    with pytest.raises(InvalidParams):
        as_multi_index([1, -1])
    with pytest.raises(InvalidParams):
        as_multi_index([])
