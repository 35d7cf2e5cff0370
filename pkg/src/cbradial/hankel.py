"""Hankel truncations, trace norms, and square-root factorizations.

All matrices here are dense truncations H[j, k] = b(j + k).  Trace norms come
from LAPACK symmetric eigensolves (or the eigensolve of H* H when the matrix
is not Hermitian); square-root factorizations come from the SVD.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .seqsym import DiscreteSymbol, eval_range
from .quadrature import QuadratureSpec


@dataclass(frozen=True)
class HankelMatrix:
    """Dense n x n truncation of an infinite Hankel matrix."""

    entries: np.ndarray
    symbol: DiscreteSymbol | None = None

    @property
    def size(self) -> int:
        return self.entries.shape[0]


def build_hankel(b: DiscreteSymbol, n: int) -> HankelMatrix:
    """The truncation (b(j + k))_{0 <= j,k < n}; each b(m) evaluated once."""
    if n < 1:
        raise ValueError("n must be >= 1")
    vals = eval_range(b, 0, 2 * n - 2)
    if not np.all(np.isfinite(vals)):
        raise ValueError("symbol produced non-finite entries")
    idx = np.add.outer(np.arange(n), np.arange(n))
    return HankelMatrix(entries=vals[idx], symbol=b)


def _as_matrix(h) -> np.ndarray:
    if isinstance(h, HankelMatrix):
        return h.entries
    m = np.asarray(h)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    return m


def schatten1(h) -> float:
    """Trace norm (sum of singular values) of a dense square matrix.

    Real symmetric input goes through one symmetric eigensolve; anything else
    through the eigensolve of H* H with eigenvalues clipped at zero.
    """
    m = _as_matrix(h)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    if np.isrealobj(m) and np.array_equal(m, m.T):
        return float(np.sum(np.abs(np.linalg.eigvalsh(m))))
    gram = m.conj().T @ m
    ev = np.linalg.eigvalsh(gram)
    return float(np.sum(np.sqrt(np.clip(ev, 0.0, None))))


def schatten2(h) -> float:
    """Hilbert-Schmidt norm."""
    m = _as_matrix(h)
    return float(np.linalg.norm(m, "fro"))


@dataclass(frozen=True)
class SqrtFactorization:
    """Factorization H = A* B with ||A||_S2 ||B||_S2 = ||H||_S1."""

    a: np.ndarray
    b: np.ndarray
    s1: float

    def reconstruction(self) -> np.ndarray:
        return self.a.conj().T @ self.b


def sqrt_factor(h) -> SqrtFactorization:
    """SVD square-root factorization: A = s^{1/2} U*, B = s^{1/2} V*."""
    m = _as_matrix(h)
    u, s, vh = np.linalg.svd(m)
    root = np.sqrt(s)[:, None]
    a = root * u.conj().T
    b = root * vh
    return SqrtFactorization(a=a, b=b, s1=float(np.sum(s)))


def antidiag_lower_bound(h, n: int) -> float:
    """Sum of |entries| on the n-th anti-diagonal; a certified S1 lower bound.

    The anti-diagonal positions form a partial permutation, so this sum never
    exceeds the trace norm.
    """
    m = _as_matrix(h)
    size = m.shape[0]
    if n < 0:
        raise ValueError("n must be nonnegative")
    j0 = max(0, n - (size - 1))
    j1 = min(n, size - 1)
    if j0 > j1:
        return 0.0
    js = np.arange(j0, j1 + 1)
    return float(np.sum(np.abs(m[js, n - js])))


def shift_sandwich_check(a: DiscreteSymbol, n: int) -> tuple[float, float, float]:
    """Trace norms of the shifted and unshifted truncations plus the row bound.

    Returns (||(a_{j+k+1})||, ||(a_{j+k})||, |a_0| + 2 ||(a_{j+k+1})||) on
    n x n truncations.  For symbols whose support the truncation covers, the
    three values are ordered increasingly: the shifted matrix embeds into the
    unshifted one, and splitting off the first row and corner entry gives the
    third.
    """
    from .seqsym import shift as _shift

    shifted = _shift(a, 1)
    s1_shift = schatten1(build_hankel(shifted, n))
    s1_base = schatten1(build_hankel(a, n))
    return s1_shift, s1_base, abs(complex(a.eval(0))) + 2.0 * s1_shift


def hadamard_hankel_bound_check(
    a: dict[int, complex],
    b: np.ndarray,
    quad: QuadratureSpec | None = None,
) -> tuple[float, float]:
    """Entrywise Hankel multiplier bound: both sides of
    ||(a_{j+k} B_{j,k})||_S1 <= ||sum_n a_n e(n theta)||_L1 * ||B||_S1.

    `a` maps integers (any sign) to coefficients; only nonnegative indices
    reach the left side, the full support feeds the L1 factor.
    """
    from .besov import TrigPolynomial, l1_torus

    b = np.asarray(b)
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise ValueError("B must be square")
    n = b.shape[0]
    coeff = np.zeros(2 * n - 1, dtype=complex)
    for k, v in a.items():
        if 0 <= k <= 2 * n - 2:
            coeff[k] = v
    idx = np.add.outer(np.arange(n), np.arange(n))
    hank = coeff[idx]
    if np.all(hank.imag == 0.0) and np.isrealobj(b):
        hank = hank.real
    lhs = schatten1(hank * b)
    rhs = l1_torus(TrigPolynomial(dict(a)), quad) * schatten1(b)
    return lhs, rhs
