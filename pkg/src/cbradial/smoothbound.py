"""Weighted L2 functionals of smooth symbols and the derivative bound report.

The central quantity is, for f on (0, inf) and 0 < alpha <= 1/2,

    A = sqrt(||x^{1/2-alpha} f'|| ||x^{1/2+alpha} f'||)      (L2 on (0, inf))
    B = sqrt(||x^{3/2-alpha} f''|| ||x^{3/2+alpha} f''||)

whose geometric mean divided by sqrt(alpha) dominates the trace norms of all
first-difference Hankel truncations of the sampled symbol, uniformly in the
scaling f(t .).  A sampled variant replaces the first factor by discrete l2
norms of f itself on the integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import AccuracyError, DivergenceError
from .quadrature import integrate_halfline
from .seqsym import (
    DiscreteSymbol,
    FiniteTail,
    TailModel,
    UnknownTail,
    weighted_sq_tail,
)

_FD_STEP = 1e-5


def _fd_first(f):
    def fp(x):
        x = np.asarray(x, dtype=float)
        h = _FD_STEP * (1.0 + x)
        return (np.asarray(f(x + h)) - np.asarray(f(x - h))) / (2.0 * h)

    return fp


def _fd_second(f):
    def fpp(x):
        x = np.asarray(x, dtype=float)
        h = _FD_STEP * (1.0 + x)
        return (np.asarray(f(x + h)) - 2.0 * np.asarray(f(x)) + np.asarray(f(x - h))) / (h * h)

    return fpp


@dataclass(frozen=True)
class SmoothSymbol:
    """A symbol on (0, inf) with derivatives and an optional sampling tail.

    Missing derivatives fall back to central differences with step
    1e-5 * (1 + x) and mark the symbol as approximate.  `sampled_tail(t)`
    must return a tail model valid for n -> f(t n); it gates every discrete
    l2 functional.
    """

    f: Callable
    f_prime: Callable | None = None
    f_second: Callable | None = None
    sup_abs: float | None = None
    sampled_tail: Callable[[float], TailModel] | None = None
    description: str = ""

    @property
    def analytic_derivatives(self) -> bool:
        return self.f_prime is not None and self.f_second is not None

    def d1(self):
        return self.f_prime if self.f_prime is not None else _fd_first(self.f)

    def d2(self):
        return self.f_second if self.f_second is not None else _fd_second(self.f)

    def scaled(self, t: float) -> "SmoothSymbol":
        """The symbol x -> f(t x) with chain-rule derivatives."""
        if t <= 0:
            raise ValueError("t must be positive")
        f, fp, fpp = self.f, self.f_prime, self.f_second
        sf = lambda x, _f=f, _t=t: _f(_t * np.asarray(x, dtype=float))
        sfp = None if fp is None else (lambda x, _g=fp, _t=t: _t * _g(_t * np.asarray(x, dtype=float)))
        sfpp = None if fpp is None else (lambda x, _g=fpp, _t=t: _t * _t * _g(_t * np.asarray(x, dtype=float)))
        tail = None
        if self.sampled_tail is not None:
            tail = lambda s, _st=self.sampled_tail, _t=t: _st(_t * s)
        return SmoothSymbol(
            f=sf,
            f_prime=sfp,
            f_second=sfpp,
            sup_abs=self.sup_abs,
            sampled_tail=tail,
            description=f"{self.description}@t={t:g}" if self.description else "",
        )


def weighted_l2_cont(g, beta: float, lo: float = 0.0, tol: float = 1e-8) -> float:
    """(integral_lo^inf x^{2 beta} |g(x)|^2 dx)^{1/2}.

    `g` must accept numpy arrays.  Divergent weights raise DivergenceError
    naming the weight.
    """

    def integrand(x):
        return x ** (2.0 * beta) * np.abs(g(x)) ** 2

    try:
        val, err = integrate_halfline(integrand, lo)
    except DivergenceError as exc:
        raise DivergenceError(f"weight x^{beta:g}: {exc}") from None
    val = max(val, 0.0)
    norm = math.sqrt(val)
    # err is an integral error; translate to the norm scale defensively
    if norm > 0 and err / (2.0 * norm) > tol:
        raise DivergenceError(
            f"weight x^{beta:g}: integral error {err:.2e} exceeds tolerance at norm scale"
        )
    return norm


def weighted_l2_disc(s: DiscreteSymbol, beta: float) -> float:
    """(sum_{k >= 1} k^{2 beta} |s(k)|^2)^{1/2} with a certified tail cut.

    Refuses symbols with an unknown tail model; declares divergence when the
    model cannot certify a convergent tail.  Slowly converging power tails
    cannot reach the usual 1e-13 relative cut by direct summation; once the
    summation cap is hit with a finite certified remainder below 1e-5 of the
    partial sum, the bracket midpoint is returned (relative error under
    3e-6), otherwise AccuracyError carries the best estimate.
    """
    if isinstance(s.tail, UnknownTail):
        raise ValueError("weighted_l2_disc needs a declared tail model")
    if isinstance(s.tail, FiniteTail):
        last = max(s.tail.last, 0)
        ks = np.arange(1, last + 1, dtype=float)
        if len(ks) == 0:
            return 0.0
        vals = np.asarray([abs(complex(s.eval(int(k)))) ** 2 for k in ks])
        return math.sqrt(float(np.sum(ks ** (2.0 * beta) * vals)))

    from .seqsym import eval_range

    partial = 0.0
    k0 = 64
    k_prev = 0
    while True:
        ks = np.arange(k_prev + 1, k0 + 1, dtype=float)
        vals = eval_range(s, k_prev + 1, k0)
        partial += float(np.sum(ks ** (2.0 * beta) * np.abs(vals) ** 2))
        tail = weighted_sq_tail(s, k0, beta)
        if tail <= max(1e-24, 1e-13 * partial):
            return math.sqrt(partial + 0.5 * tail)
        if not math.isfinite(tail) and k0 >= 1 << 14:
            raise DivergenceError(
                f"discrete weight k^{beta:g}: tail model cannot certify convergence"
            )
        if k0 >= 1 << 22:
            if tail <= 1e-5 * max(partial, 1e-280):
                return math.sqrt(partial + 0.5 * tail)
            raise AccuracyError(
                f"discrete weight k^{beta:g}: tail not certified below tolerance",
                best_estimate=math.sqrt(partial + 0.5 * tail),
                achieved_tol=tail / max(partial, 1e-280),
            )
        k_prev = k0
        k0 *= 2


@dataclass(frozen=True)
class BoundReport:
    """Derivative functionals of f(t .) and the resulting multiplier bounds.

    bound_smooth  = sqrt(A B) / sqrt(alpha)
    bound_sampled = |f(0)| + (A_disc + sqrt(A_disc B_disc)) / sqrt(alpha)

    Both A and B are invariant under t by construction; computing them at the
    given t exercises that invariance rather than assuming it.
    """

    alpha: float
    t: float
    a_cont: float
    b_cont: float
    a_disc: Optional[float]
    b_disc: Optional[float]
    bound_smooth: float
    bound_sampled: Optional[float]
    quadrature_error: float
    approximate_derivatives: bool


def _check_alpha(alpha: float):
    if not (0.0 < alpha <= 0.5):
        raise ValueError("alpha must lie in (0, 1/2]")


def bound_report(f: SmoothSymbol, alpha: float, t: float = 1.0, sampled: bool = True) -> BoundReport:
    """Compute the weighted derivative functionals of x -> f(t x)."""
    _check_alpha(alpha)
    ft = f.scaled(t)
    fp, fpp = ft.d1(), ft.d2()

    acc = [0.0]
    # difference quotients carry ~1e-7 relative noise; asking the panels for
    # more than that just stalls the refinement
    rel = 1e-12 if ft.analytic_derivatives else 1e-6

    def wnorm(g, beta, lo):
        def integrand(x):
            return x ** (2.0 * beta) * np.abs(g(x)) ** 2

        try:
            val, err = integrate_halfline(integrand, lo, rel_tol=rel)
        except DivergenceError as exc:
            raise DivergenceError(f"weight x^{beta:g}: {exc}") from None
        acc[0] += err
        return math.sqrt(max(val, 0.0))

    a_cont = math.sqrt(wnorm(fp, 0.5 - alpha, 0.0) * wnorm(fp, 0.5 + alpha, 0.0))
    b_cont = math.sqrt(wnorm(fpp, 1.5 - alpha, 0.0) * wnorm(fpp, 1.5 + alpha, 0.0))

    a_disc = b_disc = bound_sampled = None
    if sampled:
        if ft.sampled_tail is None:
            raise ValueError("sampled bound needs a sampled_tail model on the symbol")
        tail = ft.sampled_tail(1.0)

        def sample_eval(n, _f=ft.f):
            arr = np.asarray(n)
            if arr.ndim == 0:
                return complex(_f(float(arr)))
            return _f(arr.astype(float))

        samples = DiscreteSymbol(eval=sample_eval, tail=tail)
        a_disc = math.sqrt(
            weighted_l2_disc(samples, 0.5 - alpha) * weighted_l2_disc(samples, 0.5 + alpha)
        )
        b_disc = math.sqrt(wnorm(fp, 1.5 - alpha, 1.0) * wnorm(fp, 1.5 + alpha, 1.0))
        f0 = abs(complex(ft.f(0.0)))
        bound_sampled = f0 + (a_disc + math.sqrt(a_disc * b_disc)) / math.sqrt(alpha)

    return BoundReport(
        alpha=alpha,
        t=t,
        a_cont=a_cont,
        b_cont=b_cont,
        a_disc=a_disc,
        b_disc=b_disc,
        bound_smooth=math.sqrt(a_cont * b_cont) / math.sqrt(alpha),
        bound_sampled=bound_sampled,
        quadrature_error=acc[0],
        approximate_derivatives=not ft.analytic_derivatives,
    )


def transfer_checks(
    f: SmoothSymbol, alpha: float, diff_tail=None
) -> list[tuple[float, float]]:
    """Discrete-to-continuous transfer pairs (lhs, rhs), lhs <= rhs expected.

    Pairs 1-2 (weights 1/2 -+ alpha, squared):
        sum_{n>=1} n^{2 beta} |f(n+1) - f(n)|^2   vs   ||x^beta f'||^2_{L2(1, inf)}
    Pairs 3-4 (weights 3/2 -+ alpha, norms):
        ||x^beta (f'(x+1) - f'(x))||_{L2(1, inf)} vs  ||x^beta f''||_{L2(1, inf)}

    `diff_tail` may declare a sharper model for n -> f(n+1) - f(n) than the
    generic propagation (e.g. the extra power a derivative bound gives).
    """
    _check_alpha(alpha)
    if f.sampled_tail is None and diff_tail is None:
        raise ValueError("transfer checks need a sampled_tail model")
    fp, fpp = f.d1(), f.d2()
    if diff_tail is None:
        # |f(n+1) - f(n)| <= bound(n) + bound(n+1) <= 2 bound(n) for our models
        from .seqsym import _propagate_difference

        diff_tail = _propagate_difference(f.sampled_tail(1.0), 1)
    diff = DiscreteSymbol(
        eval=lambda n, _f=f.f: _f(np.asarray(n, dtype=float) + 1.0)
        - _f(np.asarray(n, dtype=float)),
        tail=diff_tail,
    )
    out: list[tuple[float, float]] = []
    for beta in (0.5 - alpha, 0.5 + alpha):
        lhs = weighted_l2_disc(diff, beta) ** 2
        rhs = weighted_l2_cont(fp, beta, lo=1.0) ** 2
        out.append((lhs, rhs))
    for beta in (1.5 - alpha, 1.5 + alpha):
        gd = lambda x, _g=fp: _g(np.asarray(x, dtype=float) + 1.0) - _g(np.asarray(x, dtype=float))
        lhs = weighted_l2_cont(gd, beta, lo=1.0)
        rhs = weighted_l2_cont(fpp, beta, lo=1.0)
        out.append((lhs, rhs))
    return out


def subordination_check(f: SmoothSymbol, alpha: float) -> tuple[float, float, float, float]:
    """(||x^{1/2+alpha} f'||, ||x^{3/2+alpha} f''||/(1+alpha), ||f'||_L1, sqrt(2) A / sqrt(alpha)).

    First <= second and third <= fourth are the subordination inequalities.
    """
    _check_alpha(alpha)
    fp, fpp = f.d1(), f.d2()
    first = weighted_l2_cont(fp, 0.5 + alpha, lo=0.0)
    second = weighted_l2_cont(fpp, 1.5 + alpha, lo=0.0) / (1.0 + alpha)

    def abs_fp(x):
        return np.abs(fp(x))

    l1, _err = integrate_halfline(abs_fp, 0.0)
    a_cont = math.sqrt(
        weighted_l2_cont(fp, 0.5 - alpha, 0.0) * weighted_l2_cont(fp, 0.5 + alpha, 0.0)
    )
    fourth = math.sqrt(2.0) * a_cont / math.sqrt(alpha)
    return first, second, max(l1, 0.0), fourth
