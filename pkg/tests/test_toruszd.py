"""Divided differences, lattice kernels, and torus L1 estimation."""

import math

import numpy as np
import pytest

from cbradial.toruszd import (
    dirichlet_divdiff,
    dirichlet_lattice,
    divided_difference,
    divided_difference_direct,
    indicator_divdiff,
    indicator_divdiff_averaged,
    l1_ball_lattice,
    l1_torus_mc,
    l1_torus_tensor2,
    radial_l1_transfer_check,
    radial_l1_transfer_check_twosided,
)


def admissible(rng, count, d, sep=5e-2):
    out = []
    while len(out) < count:
        p = rng.uniform(0.0, math.pi, size=d)
        c = np.cos(p)
        if d == 1 or np.abs(np.subtract.outer(c, c))[~np.eye(d, dtype=bool)].min() > sep:
            out.append(p)
    return np.asarray(out)


def test_divided_difference_polynomial_exactness():
    rng = np.random.default_rng(2)
    for n in (2, 3, 5):
        nodes = np.sort(rng.uniform(-1, 1, size=n))
        while np.min(np.diff(nodes)) < 0.1:
            nodes = np.sort(rng.uniform(-1, 1, size=n))
        # top-degree monomial has divided difference 1, lower degrees 0
        assert divided_difference(nodes, lambda x: x ** (n - 1)) == pytest.approx(1.0, abs=1e-9)
        if n >= 2:
            assert abs(divided_difference(nodes, lambda x: x ** (n - 2))) < 1e-9
        assert abs(divided_difference(nodes, lambda x: np.ones_like(x) if n > 1 else x * 0 + 1)) < 1e-9 or n == 1


def test_divided_difference_agrees_with_direct():
    rng = np.random.default_rng(8)
    nodes = np.array([-0.8, -0.1, 0.4, 0.9])
    f = lambda x: np.exp(x)
    a = divided_difference(nodes, f)
    b = divided_difference_direct(nodes, f)
    assert a == pytest.approx(b, rel=1e-10)


def test_dirichlet_small_case_closed_form():
    # order-1 kernel on two variables: 1 + 2 cos x1 + 2 cos x2
    rng = np.random.default_rng(4)
    pts = admissible(rng, 50, 2)
    got = dirichlet_divdiff(1, pts)
    want = 1.0 + 2.0 * np.cos(pts[:, 0]) + 2.0 * np.cos(pts[:, 1])
    np.testing.assert_allclose(got, want, atol=1e-10)


def test_lattice_ball_counts():
    assert len(l1_ball_lattice(1, 2)) == 5
    assert len(l1_ball_lattice(2, 2)) == 13
    assert len(l1_ball_lattice(1, 3)) == 7


def test_dirichlet_divdiff_matches_lattice_sum():
    # the closed identity is an even-dimension statement; odd d is handled
    # by averaging over an extra coordinate
    rng = np.random.default_rng(12)
    for d in (2, 4):
        pts = admissible(rng, 40, d)
        for m in (2, 5):
            a = dirichlet_divdiff(m, pts)
            b = dirichlet_lattice(m, pts)
            np.testing.assert_allclose(a, b, atol=1e-9)
    with pytest.raises(ValueError):
        dirichlet_divdiff(2, admissible(rng, 5, 3))


def test_dirichlet_rejects_coincident_cosines():
    pts = np.array([[0.7, 0.7]])
    with pytest.raises(ValueError):
        dirichlet_divdiff(2, pts)


def test_indicator_d1_interval_mass():
    # in one variable the averaged and raw indicators integrate to t - s
    s, t = 0.6, 1.9
    est = l1_torus_mc(
        lambda p: indicator_divdiff(s, t, p), 1, 20000, seed=3, domain="0pi"
    )
    assert abs(est.value - (t - s)) <= 3.0 * est.std_error + 1e-12


def test_mc_seed_determinism():
    f = lambda p: np.cos(p[:, 0]) + 0.2
    a = l1_torus_mc(f, 2, 5000, seed=9, sep_min=0.0)
    b = l1_torus_mc(f, 2, 5000, seed=9, sep_min=0.0)
    assert a.value == b.value and a.std_error == b.std_error
    c = l1_torus_mc(f, 2, 5000, seed=10, sep_min=0.0)
    assert c.value != a.value


def test_mc_constant_function_exact():
    est = l1_torus_mc(lambda p: np.ones(len(p)), 2, 2000, seed=0, sep_min=0.0)
    assert est.value == pytest.approx(math.pi**2, rel=1e-12)
    assert est.std_error == pytest.approx(0.0, abs=1e-12)
    norm = l1_torus_mc(
        lambda p: np.ones(len(p)), 2, 2000, seed=0, sep_min=0.0, normalized=True
    )
    assert norm.value == pytest.approx(1.0, rel=1e-12)


def test_mc_agrees_with_tensor_quadrature():
    f = lambda p: 1.0 + np.cos(p[:, 0]) * np.sin(p[:, 1])
    quad = l1_torus_tensor2(f)
    est = l1_torus_mc(f, 2, 60000, seed=7, sep_min=0.0)
    assert abs(est.value - quad) <= 4.0 * est.std_error


def test_averaged_indicator_against_adaptive_quadrature():
    # independent oracle: integrate the raw slice over the extra coordinate
    from scipy.integrate import quad

    from cbradial.toruszd import _chi_divdiff_raw

    rng = np.random.default_rng(21)
    pts = admissible(rng, 6, 3)
    s, t = 0.5, 2.0
    got = indicator_divdiff_averaged(s, t, pts, nodes_per_segment=24)
    refined = indicator_divdiff_averaged(s, t, pts, nodes_per_segment=48)
    np.testing.assert_allclose(got, refined, atol=1e-9)
    for k in range(len(pts)):
        row = pts[k]

        def slice_val(u, _row=row):
            aug = np.concatenate([_row, [u]])[None, :]
            return float(_chi_divdiff_raw(s, t, aug)[0])

        want, _ = quad(slice_val, 0.0, math.pi, points=[s, t], limit=200)
        assert got[k] == pytest.approx(want / math.pi, abs=1e-6)


def test_transfer_identity_for_flat_profile():
    lhs, rhs = radial_l1_transfer_check({0: 1.0}, 2, mc_samples=2000, seed=0)
    assert lhs == pytest.approx(1.0, abs=1e-12)
    assert rhs == pytest.approx(1.0, abs=1e-9)


def test_transfer_twosided_geometric_profile():
    prof = {m: 0.5**m for m in range(6)}
    lhs, rhs = radial_l1_transfer_check_twosided(prof, 2, mc_samples=20000, seed=1)
    assert lhs <= rhs * (1.0 + 5e-2)


def test_mc_input_validation():
    with pytest.raises(ValueError):
        l1_torus_mc(lambda p: np.ones(len(p)), 2, 10, seed=0)
    with pytest.raises(ValueError):
        l1_torus_mc(lambda p: np.ones(len(p)), 0, 2000, seed=0)
    with pytest.raises(ValueError):
        l1_torus_mc(lambda p: np.ones(len(p)), 2, 2000, seed=0, domain="unit")
