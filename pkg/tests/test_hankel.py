"""Trace-norm computations on Hankel truncations."""

import numpy as np
import pytest

from cbradial.hankel import (
    antidiag_lower_bound,
    build_hankel,
    hadamard_hankel_bound_check,
    schatten1,
    schatten2,
    shift_sandwich_check,
    sqrt_factor,
)
from cbradial.seqsym import DiscreteSymbol, ExponentialTail, difference, finite_symbol


def geometric(q):
    return DiscreteSymbol(
        eval=lambda n, _q=q: np.power(_q, np.asarray(n, dtype=float)),
        tail=ExponentialTail(rate=abs(q), coeff=1.0),
    )


def test_build_hankel_entries():
    s = finite_symbol([1.0, 2.0, 3.0])
    h = build_hankel(s, 3)
    want = np.array([[1.0, 2.0, 3.0], [2.0, 3.0, 0.0], [3.0, 0.0, 0.0]])
    np.testing.assert_allclose(np.asarray(h.entries, dtype=float), want)
    assert h.size == 3


def test_schatten1_matches_svd():
    rng = np.random.default_rng(7)
    for n in (3, 8, 17):
        vals = rng.standard_normal(2 * n - 1)
        s = finite_symbol(list(vals))
        got = schatten1(build_hankel(s, n))
        idx = np.add.outer(np.arange(n), np.arange(n))
        brute = float(np.linalg.svd(vals[idx], compute_uv=False).sum())
        assert got == pytest.approx(brute, rel=1e-12)


def test_schatten1_complex_symbol():
    rng = np.random.default_rng(11)
    vals = rng.standard_normal(15) + 1j * rng.standard_normal(15)
    s = finite_symbol(list(vals))
    got = schatten1(build_hankel(s, 8))
    idx = np.add.outer(np.arange(8), np.arange(8))
    brute = float(np.linalg.svd(vals[idx], compute_uv=False).sum())
    assert got == pytest.approx(brute, rel=1e-12)


def test_rank_one_geometric_trace_norm():
    # b(n) = q^n gives H = u u^T with u_j = q^j, so s1 = sum q^{2j}
    q = 0.6
    for n in (5, 20):
        got = schatten1(build_hankel(geometric(q), n))
        want = sum(q ** (2 * j) for j in range(n))
        assert got == pytest.approx(want, rel=1e-13)


def test_schatten2_is_frobenius():
    s = finite_symbol([1.0, -2.0, 0.5, 3.0])
    idx = np.add.outer(np.arange(4), np.arange(4))
    vals = np.array([1.0, -2.0, 0.5, 3.0, 0.0, 0.0, 0.0])
    assert schatten2(build_hankel(s, 4)) == pytest.approx(
        float(np.linalg.norm(vals[idx])), rel=1e-13
    )


def test_sqrt_factor_reconstructs_and_reports_s1():
    s = finite_symbol([2.0, 1.0, 0.25, -0.5])
    h = build_hankel(s, 4)
    fact = sqrt_factor(h)
    idx = np.add.outer(np.arange(4), np.arange(4))
    vals = np.array([2.0, 1.0, 0.25, -0.5, 0.0, 0.0, 0.0])
    np.testing.assert_allclose(fact.reconstruction(), vals[idx], atol=1e-12)
    assert fact.s1 == pytest.approx(schatten1(h), rel=1e-12)
    assert fact.a.shape == fact.b.shape


def test_antidiag_lower_bound_is_single_diagonal_mass():
    s = finite_symbol([1.0, -3.0, 2.0, 0.5])
    h = build_hankel(s, 4)
    for n in (0, 1, 2, 3):
        want = (n + 1) * abs(complex(s.eval(n)))
        assert antidiag_lower_bound(h, n) == pytest.approx(want, rel=1e-14)
        assert antidiag_lower_bound(h, n) <= schatten1(h) + 1e-12


def test_shift_sandwich_ordering():
    s = difference(finite_symbol([1.0, 0.7, 0.4, 0.2, 0.05]), 1)
    lo, mid, hi = shift_sandwich_check(s, 8)
    assert lo <= mid + 1e-12
    assert mid <= hi + 1e-12


def test_hadamard_hankel_bound_random():
    rng = np.random.default_rng(3)
    a = {k: float(v) for k, v in enumerate(rng.standard_normal(6))}
    for _ in range(3):
        b = rng.standard_normal((6, 6))
        lhs, rhs = hadamard_hankel_bound_check(a, b)
        assert lhs <= rhs + 1e-9 * max(1.0, rhs)
