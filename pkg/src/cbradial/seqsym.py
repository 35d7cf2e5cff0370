"""Discrete radial symbols with declared tail models and certified tail sums.

A symbol is a map n -> b(n) on the nonnegative integers together with a tail
model declared by the caller.  Tail models are never inferred from samples;
every certified bound in the package dispatches on the declared model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np
from scipy.special import gammaincc, gammaln


def _upper_gamma(s: float, x: float) -> float:
    """Upper incomplete gamma Gamma(s, x), unregularized."""
    if x < 0:
        raise ValueError("x must be nonnegative")
    return float(math.exp(gammaln(s)) * gammaincc(s, x))


@dataclass(frozen=True)
class FiniteTail:
    """b(n) == 0 for every n > last.  last = -1 means the zero symbol."""

    last: int

    def __post_init__(self):
        if self.last < -1:
            raise ValueError("last must be >= -1")


@dataclass(frozen=True)
class ExponentialTail:
    """|b(n)| <= coeff * rate**n with rate in (0, 1)."""

    rate: float
    coeff: float

    def __post_init__(self):
        if not (0.0 < self.rate < 1.0):
            raise ValueError("rate must lie in (0, 1)")
        if self.coeff < 0:
            raise ValueError("coeff must be nonnegative")


@dataclass(frozen=True)
class StretchedExpTail:
    """|b(n)| <= coeff * exp(-rate * n**exponent) with rate, exponent > 0."""

    rate: float
    exponent: float
    coeff: float

    def __post_init__(self):
        if self.rate <= 0 or self.exponent <= 0:
            raise ValueError("rate and exponent must be positive")
        if self.coeff < 0:
            raise ValueError("coeff must be nonnegative")


@dataclass(frozen=True)
class PowerTail:
    """|b(n)| <= coeff * (1 + n)**(-power) with power > 0."""

    power: float
    coeff: float

    def __post_init__(self):
        if self.power <= 0:
            raise ValueError("power must be positive")
        if self.coeff < 0:
            raise ValueError("coeff must be nonnegative")


@dataclass(frozen=True)
class UnknownTail:
    """No decay information; certified tail sums are +inf."""


TailModel = Union[FiniteTail, ExponentialTail, StretchedExpTail, PowerTail, UnknownTail]


@dataclass(frozen=True)
class DiscreteSymbol:
    """A sequence n -> b(n), n >= 0, with a caller-declared tail model."""

    eval: Callable[[int], complex]
    tail: TailModel = UnknownTail()
    description: str = ""

    def __call__(self, n: int) -> complex:
        return self.eval(n)


def finite_symbol(values: Sequence[complex], description: str = "") -> DiscreteSymbol:
    """Symbol taking the given values on 0..len-1 and zero afterwards."""
    vals = list(values)

    def ev(n, _v=vals):
        return _v[n] if 0 <= n < len(_v) else 0.0

    return DiscreteSymbol(eval=ev, tail=FiniteTail(len(vals) - 1), description=description)


def eval_range(s: DiscreteSymbol, n0: int, n1: int) -> np.ndarray:
    """Values b(n0), ..., b(n1) as a float or complex array.

    Tries one vectorized call first; symbols with scalar-only evaluators fall
    back to a loop.
    """
    if n0 < 0 or n1 < n0:
        raise ValueError("need 0 <= n0 <= n1")
    ns = np.arange(n0, n1 + 1)
    try:
        arr = np.asarray(s.eval(ns), dtype=complex)
        if arr.shape != ns.shape:
            raise TypeError
    except (TypeError, ValueError, IndexError):
        arr = np.asarray([complex(s.eval(int(n))) for n in ns], dtype=complex)
    if np.all(arr.imag == 0.0):
        return arr.real.copy()
    return arr


def _propagate_difference(tail: TailModel, step: int) -> TailModel:
    if isinstance(tail, FiniteTail):
        return tail
    if isinstance(tail, ExponentialTail):
        return ExponentialTail(tail.rate, tail.coeff * (1.0 + tail.rate**step))
    if isinstance(tail, StretchedExpTail):
        # |b(n) - b(n+s)| <= c e^{-a n^rho} (1 + e^{-a((n+s)^rho - n^rho)});
        # the parenthesis is < 2 always, and for rho >= 1 the infimum of the
        # increment sits at n = 0.
        if tail.exponent >= 1.0:
            factor = 1.0 + math.exp(-tail.rate * step**tail.exponent)
        else:
            factor = 2.0
        return StretchedExpTail(tail.rate, tail.exponent, tail.coeff * factor)
    if isinstance(tail, PowerTail):
        return PowerTail(tail.power, 2.0 * tail.coeff)
    return UnknownTail()


def difference(s: DiscreteSymbol, step: int = 1) -> DiscreteSymbol:
    """The symbol n -> b(n) - b(n + step), with its tail model propagated."""
    if step not in (1, 2):
        raise ValueError("step must be 1 or 2")

    def ev(n, _s=s.eval, _k=step):
        return _s(n) - _s(n + _k)

    return DiscreteSymbol(
        eval=ev,
        tail=_propagate_difference(s.tail, step),
        description=f"diff{step}({s.description})" if s.description else f"diff{step}",
    )


def shift(s: DiscreteSymbol, k: int = 1) -> DiscreteSymbol:
    """The symbol n -> b(n + k); the declared bound still applies."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    tail = s.tail
    if isinstance(tail, FiniteTail):
        tail = FiniteTail(max(tail.last - k, -1))
    elif isinstance(tail, ExponentialTail):
        tail = ExponentialTail(tail.rate, tail.coeff * tail.rate**k)

    def ev(n, _s=s.eval, _k=k):
        return _s(n + _k)

    return DiscreteSymbol(eval=ev, tail=tail, description=f"shift{k}({s.description})")


# ---------------------------------------------------------------------------
# certified tail sums


def antidiag_tail_sum(s: DiscreteSymbol, start: int) -> float:
    """Certified upper bound on sum_{n >= start} (n+1) |b(n)|.

    The n-th anti-diagonal of a Hankel matrix is a partial permutation scaled
    by b(n), of trace norm (n+1)|b(n)|; this sum therefore dominates the trace
    norm of everything a Hankel matrix carries on anti-diagonals >= start.
    """
    if start < 0:
        raise ValueError("start must be nonnegative")
    t = s.tail
    if isinstance(t, FiniteTail):
        if start > t.last:
            return 0.0
        return float(sum((n + 1) * abs(s.eval(n)) for n in range(start, t.last + 1)))
    if isinstance(t, ExponentialTail):
        q, c = t.rate, t.coeff
        m = start
        # sum_{n>=m} (n+1) q^n = q^m (m + 1 - m q) / (1-q)^2
        return c * q**m * (m + 1.0 - m * q) / (1.0 - q) ** 2
    if isinstance(t, StretchedExpTail):
        a, rho, c = t.rate, t.exponent, t.coeff
        if c == 0.0:
            return 0.0
        if start == 0:
            return c + antidiag_tail_sum(s, 1)
        # (n+1) e^{-a n^rho} <= int_{n-1}^{n} (x+2) e^{-a x^rho} dx, so the sum
        # from m is dominated by the integral from m-1.
        lo = float(start - 1)
        x0 = a * lo**rho
        i1 = _upper_gamma(2.0 / rho, x0) * a ** (-2.0 / rho) / rho
        i0 = _upper_gamma(1.0 / rho, x0) * a ** (-1.0 / rho) / rho
        return c * (i1 + 2.0 * i0)
    if isinstance(t, PowerTail):
        p, c = t.power, t.coeff
        if p <= 2.0:
            return math.inf
        m = start
        return c * ((1.0 + m) ** (1.0 - p) + (1.0 + m) ** (2.0 - p) / (p - 2.0))
    return math.inf


def tail_s1_bound(s: DiscreteSymbol, n: int) -> float:
    """Certified bound sum_{m >= 2n-1} (m+1)|b(m)| for an n x n truncation.

    Anti-diagonals with index >= 2n-1 lie entirely outside an n x n corner;
    this is the part of the declared tail an n x n truncation cannot see at
    all.  (Bracketing code that compares against the corner uses
    antidiag_tail_sum(s, n), which also covers the partially visible band.)
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return antidiag_tail_sum(s, 2 * n - 1)


def abs_tail_sum(s: DiscreteSymbol, start: int) -> float:
    """Certified upper bound on sum_{n >= start} |b(n)|."""
    if start < 0:
        raise ValueError("start must be nonnegative")
    t = s.tail
    if isinstance(t, FiniteTail):
        if start > t.last:
            return 0.0
        return float(sum(abs(s.eval(n)) for n in range(start, t.last + 1)))
    if isinstance(t, ExponentialTail):
        return t.coeff * t.rate**start / (1.0 - t.rate)
    if isinstance(t, StretchedExpTail):
        a, rho, c = t.rate, t.exponent, t.coeff
        if c == 0.0:
            return 0.0
        x0 = a * float(start) ** rho
        integral = _upper_gamma(1.0 / rho, x0) * a ** (-1.0 / rho) / rho
        return c * (math.exp(-x0) + integral)
    if isinstance(t, PowerTail):
        p, c = t.power, t.coeff
        if p <= 1.0:
            return math.inf
        m = start
        return c * ((1.0 + m) ** (-p) + (1.0 + m) ** (1.0 - p) / (p - 1.0))
    return math.inf


def weighted_sq_tail(s: DiscreteSymbol, k0: int, beta: float) -> float:
    """Certified upper bound on sum_{k > k0} k^{2 beta} |b(k)|^2, k0 >= 1.

    Requires beta >= 0: the integral majorizations below compare k to points
    of [k-1, k] and lean on the weight being nondecreasing.
    """
    if k0 < 1:
        raise ValueError("k0 must be >= 1")
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    t = s.tail
    if isinstance(t, FiniteTail):
        if k0 >= t.last:
            return 0.0
        return float(
            sum(k ** (2.0 * beta) * abs(s.eval(k)) ** 2 for k in range(k0 + 1, t.last + 1))
        )
    if isinstance(t, ExponentialTail):
        q, c = t.rate, t.coeff
        k = k0 + 1
        term = c * c * k ** (2.0 * beta) * q ** (2 * k)
        ratio = ((k + 1.0) / k) ** (2.0 * beta) * q * q if beta > 0 else q * q
        if ratio >= 1.0:
            return math.inf
        return term / (1.0 - ratio)
    if isinstance(t, StretchedExpTail):
        a, rho, c = t.rate, t.exponent, t.coeff
        if c == 0.0:
            return 0.0
        # k^{2b} e^{-2a k^rho} <= int_{k-1}^{k} (x+1)^{2b} e^{-2a x^rho} dx and
        # (x+1)^{2b} <= (2x)^{2b} for x >= 1.
        sgam = (2.0 * beta + 1.0) / rho
        x0 = 2.0 * a * float(k0) ** rho
        return (
            c
            * c
            * 2.0 ** (2.0 * beta)
            * _upper_gamma(sgam, x0)
            * (2.0 * a) ** (-sgam)
            / rho
        )
    if isinstance(t, PowerTail):
        p, c = t.power, t.coeff
        expo = 2.0 * beta - 2.0 * p
        if expo >= -1.0:
            return math.inf
        # terms decrease; sum_{k>k0} k^expo <= int_{k0}^inf x^expo dx
        return c * c * float(k0) ** (expo + 1.0) / (-expo - 1.0)
    return math.inf
