"""Dyadic-sum norms, disk-kernel norms, and circle L1 quadrature."""

import math

import numpy as np
import pytest

from cbradial.besov import (
    TrigPolynomial,
    besov_b11,
    dyadic_block_bound_check,
    l1_from_l2_check,
    l1_torus,
    peller_disk_l1,
    symbol_coefficients,
    vdp_coeffs,
)
from cbradial.hankel import build_hankel, schatten1
from cbradial.seqsym import finite_symbol


def test_trig_polynomial_evaluation():
    # normalized coordinates: p(x) = sum a_k exp(2 pi i k x)
    p = TrigPolynomial({0: 1.0, 1: 2.0, -1: 2.0})
    x = np.linspace(0.0, 1.0, 7)
    np.testing.assert_allclose(p(x), 1.0 + 4.0 * np.cos(2 * math.pi * x), atol=1e-12)
    assert p.degree == 1


def test_l2_parseval():
    p = TrigPolynomial({0: 3.0, 2: 1.0, -5: 2.0})
    assert p.l2() == pytest.approx(math.sqrt(9.0 + 1.0 + 4.0), rel=1e-12)


def test_positive_kernel_has_unit_l1():
    # the triangular-coefficient kernel is nonnegative with mean value 1
    n = 8
    coef = {k: 1.0 - abs(k) / n for k in range(-n + 1, n)}
    assert l1_torus(TrigPolynomial(coef)) == pytest.approx(1.0, abs=1e-10)


def test_l1_single_harmonic():
    assert l1_torus(TrigPolynomial({3: 1.0})) == pytest.approx(1.0, abs=1e-10)
    # 2|cos| has mean 4/pi
    assert l1_torus(TrigPolynomial({1: 1.0, -1: 1.0})) == pytest.approx(
        4.0 / math.pi, abs=1e-9
    )


def test_vdp_windows_partition_unity():
    ks = range(1, 200)
    for k in ks:
        tot = sum(vdp_coeffs(n).get(k, 0.0) for n in range(0, 10))
        assert tot == pytest.approx(1.0, abs=1e-12)


def test_vdp_window_support():
    w = vdp_coeffs(4)
    # window n lives on (2^{n-1}, 2^{n+1}]
    assert all(8 < k <= 32 for k in w)
    assert w[16] == pytest.approx(1.0)


def test_besov_of_single_coefficients():
    assert besov_b11({0: 1.0}) == pytest.approx(1.0, abs=1e-9)
    for k in (1, 2, 5, 12):
        assert besov_b11({k: 1.0}) == pytest.approx(float(k), abs=1e-7)


def test_besov_rejects_negative_support():
    with pytest.raises(ValueError):
        besov_b11({-1: 1.0})


def test_peller_delta_oracles():
    assert peller_disk_l1({0: 1.0}) == pytest.approx(2.0, abs=1e-9)
    assert peller_disk_l1({1: 1.0}) == pytest.approx(4.0, abs=1e-9)


def test_peller_sandwich_small_random():
    rng = np.random.default_rng(19)
    for _ in range(5):
        vals = rng.standard_normal(8)
        a = {k: float(v) for k, v in enumerate(vals)}
        g = peller_disk_l1(a)
        s1 = schatten1(build_hankel(finite_symbol(list(vals)), 8))
        assert math.pi / 8.0 * g <= s1 + 1e-7
        assert s1 <= g + 1e-7


def test_l1_from_l2_random_polynomials():
    rng = np.random.default_rng(23)
    for _ in range(5):
        coef = {int(k): float(c) for k, c in enumerate(rng.standard_normal(9))}
        lhs, rhs = l1_from_l2_check(TrigPolynomial(coef))
        assert lhs <= rhs + 1e-9 * max(1.0, rhs)


def test_dyadic_block_bound_exponential_symbol():
    from cbradial.gallery import FamilySpec, family_symbol

    _, smooth = family_symbol(FamilySpec("heat", r=1.0))
    for n in (1, 2, 4):
        lhs, rhs = dyadic_block_bound_check(smooth, n)
        assert lhs <= rhs + 1e-9 * max(1.0, rhs)


def test_symbol_coefficients_drops_zeros():
    s = finite_symbol([1.0, 0.0, 2.0])
    got = symbol_coefficients(s, 10)
    assert got == {0: 1.0, 2: 2.0}
