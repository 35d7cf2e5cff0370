"""Torus L1 functionals, the dyadic Besov norm, and the disk L1 functional.

The circle carries normalized measure: integrals run over theta in [0, 1)
against e(n theta) = exp(2 pi i n theta).  Grid integrals are exact for the
trig-polynomial values themselves (coefficient folding + FFT); only the
absolute value forces refinement, driven by grid doubling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import AccuracyError
from .quadrature import QuadratureSpec, refine_doubling
from .seqsym import DiscreteSymbol

_DEFAULT_QUAD = QuadratureSpec()


@dataclass(frozen=True)
class TrigPolynomial:
    """Finitely supported coefficients on the integers; zeros are dropped."""

    coeffs: Mapping[int, complex]

    def __post_init__(self):
        cleaned = {int(k): complex(v) for k, v in self.coeffs.items() if v != 0}
        object.__setattr__(self, "coeffs", cleaned)

    @property
    def degree(self) -> int:
        """max |n| over the support (0 for the zero polynomial)."""
        if not self.coeffs:
            return 0
        return max(abs(k) for k in self.coeffs)

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(theta.shape, dtype=complex)
        for k, v in self.coeffs.items():
            out += v * np.exp(2j * math.pi * k * theta)
        return out

    def grid_values(self, m: int) -> np.ndarray:
        """Values at theta_j = j/m, exact via coefficient folding mod m."""
        folded = np.zeros(m, dtype=complex)
        for k, v in self.coeffs.items():
            folded[k % m] += v
        return m * np.fft.ifft(folded)

    def l2(self) -> float:
        return math.sqrt(sum(abs(v) ** 2 for v in self.coeffs.values()))

    def times_one_minus_z(self) -> "TrigPolynomial":
        """Coefficients of (1 - z) p for p supported on the integers."""
        out: dict[int, complex] = {}
        for k, v in self.coeffs.items():
            out[k] = out.get(k, 0.0) + v
            out[k + 1] = out.get(k + 1, 0.0) - v
        return TrigPolynomial(out)


def _grid_size(degree: int) -> int:
    base = max(8, 8 * max(degree, 1))
    return 1 << int(math.ceil(math.log2(base)))


def l1_torus(p: TrigPolynomial, quad: QuadratureSpec | None = None) -> float:
    """Normalized L1 norm of p on the circle by grid doubling."""
    quad = quad or _DEFAULT_QUAD
    if not p.coeffs:
        return 0.0
    m0 = _grid_size(p.degree)

    def estimate(level: int) -> float:
        vals = p.grid_values(m0 << level)
        return float(np.mean(np.abs(vals)))

    return refine_doubling(estimate, quad, what="torus L1")


def vdp_coeffs(n: int) -> dict[int, float]:
    """Triangular dyadic partition kernel coefficients on [2^{n-1}, 2^{n+1}].

    n = 0 gives {0: 1, 1: 1}; for n >= 1 the hat rises on [2^{n-1}, 2^n] and
    falls on [2^n, 2^{n+1}], with the zero endpoints dropped.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return {0: 1.0, 1: 1.0}
    lo, mid, hi = 1 << (n - 1), 1 << n, 1 << (n + 1)
    out: dict[int, float] = {}
    for k in range(lo, hi + 1):
        if k <= mid:
            w = (k - lo) * 2.0 ** (-(n - 1))
        else:
            w = (hi - k) * 2.0 ** (-n)
        if w != 0.0:
            out[k] = w
    return out


def _validate_nonneg_support(a: Mapping[int, complex]) -> dict[int, complex]:
    out = {}
    for k, v in a.items():
        if k < 0:
            raise ValueError("coefficients must be supported on n >= 0")
        if v != 0:
            out[int(k)] = complex(v)
    return out


def besov_b11(a: Mapping[int, complex], quad: QuadratureSpec | None = None) -> float:
    """sum_n 2^n || W_n * phi ||_L1 for phi with the given coefficients.

    The convolution is exact on coefficients; only each block's L1 norm is
    quadrature.
    """
    coeffs = _validate_nonneg_support(a)
    if not coeffs:
        return 0.0
    kmax = max(coeffs)
    nmax = 1 if kmax <= 1 else int(math.ceil(math.log2(kmax))) + 1
    total = 0.0
    for n in range(nmax + 1):
        w = vdp_coeffs(n)
        block = {k: w[k] * coeffs[k] for k in w.keys() & coeffs.keys()}
        if not block:
            continue
        total += 2.0**n * l1_torus(TrigPolynomial(block), quad)
    return total


def peller_disk_l1(a: Mapping[int, complex], quad: QuadratureSpec | None = None) -> float:
    """Normalized disk L1 norm of g(z) = sum (n+1)(n+2) a_n z^n.

    Product rule: Gauss-Legendre radially (64 nodes per level) times uniform
    angles, both doubled together until successive estimates agree.
    """
    quad = quad or _DEFAULT_QUAD
    coeffs = _validate_nonneg_support(a)
    if not coeffs:
        return 0.0
    nmax = max(coeffs)
    g = np.zeros(nmax + 1, dtype=complex)
    for k, v in coeffs.items():
        g[k] = (k + 1.0) * (k + 2.0) * v
    m0 = _grid_size(nmax)

    def estimate(level: int) -> float:
        nr = 64 << level
        m = m0 << level
        x, w = np.polynomial.legendre.leggauss(nr)
        r = 0.5 * (x + 1.0)
        wr = 0.5 * w * 2.0 * r  # weight 2 r dr on [0, 1]
        powers = r[:, None] ** np.arange(nmax + 1)[None, :]
        radial = powers * g[None, :]
        folded = np.zeros((nr, m), dtype=complex)
        folded[:, : nmax + 1] = radial  # m >= 8 * degree > nmax always
        vals = m * np.fft.ifft(folded, axis=1)
        return float(np.dot(wr, np.mean(np.abs(vals), axis=1)))

    return refine_doubling(estimate, quad, what="disk L1")


def l1_from_l2_check(
    p: TrigPolynomial, quad: QuadratureSpec | None = None
) -> tuple[float, float]:
    """Both sides of ||p||_1 <= (2/sqrt(pi)) sqrt(||p||_2 ||(1-z) p||_2)."""
    lhs = l1_torus(p, quad)
    rhs = 2.0 / math.sqrt(math.pi) * math.sqrt(p.l2() * p.times_one_minus_z().l2())
    return lhs, rhs


def dyadic_block_bound_check(
    f,
    n: int,
    quad: QuadratureSpec | None = None,
) -> tuple[float, float]:
    """Both sides of the dyadic block bound

        2^n || W_n * phi ||_L1
            <= (4/sqrt(pi)) ( ||x^{1/2} f||_{l2(I_n)}
                              + sqrt(||x^{3/2} f'||_{L2(I_n)} ||x^{1/2} f||_{l2(I_n)}) )

    where phi has coefficients f(k) and I_n = (2^{n-1}, 2^{n+1}].  `f` is a
    SmoothSymbol (its derivative feeds the continuous factor).
    """
    from .quadrature import integrate_log_interval
    from .smoothbound import SmoothSymbol

    if not isinstance(f, SmoothSymbol):
        raise TypeError("f must be a SmoothSymbol")
    if n < 1:
        raise ValueError("n must be >= 1")
    lo, hi = 1 << (n - 1), 1 << (n + 1)
    w = vdp_coeffs(n)
    block = {}
    for k in range(lo + 1, hi + 1):
        wk = w.get(k, 0.0)
        if wk:
            block[k] = wk * complex(f.f(float(k)))
    lhs = 2.0**n * l1_torus(TrigPolynomial(block), quad) if block else 0.0

    ks = np.arange(lo + 1, hi + 1, dtype=float)
    fk = np.asarray([complex(f.f(float(k))) for k in ks])
    ell2 = math.sqrt(float(np.sum(ks * np.abs(fk) ** 2)))

    d1 = f.d1()

    def integrand(x):
        return x**3 * np.abs(d1(x)) ** 2

    val, _err = integrate_log_interval(integrand, float(lo), float(hi))
    cont = math.sqrt(max(val, 0.0))
    rhs = 4.0 / math.sqrt(math.pi) * (ell2 + math.sqrt(cont * ell2))
    return lhs, rhs


def symbol_coefficients(s: DiscreteSymbol, upto: int) -> dict[int, complex]:
    """First coefficients {n: b(n)} of a symbol, for feeding torus functionals."""
    return {n: complex(s.eval(n)) for n in range(upto + 1) if s.eval(n) != 0}
