"""Refinement quadrature drivers shared by the norm functionals.

Two engines live here: a doubling-grid driver for periodic integrands (the
grid mean is spectrally accurate away from zeros of the integrand, and the
doubling criterion certifies the requested tolerance empirically), and a
panel integrator on (lo, inf) after the substitution x = e^u, which turns
power weights into exponentials and makes endpoint singularities harmless.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import AccuracyError, DivergenceError


@dataclass(frozen=True)
class QuadratureSpec:
    """Refinement budget: absolute target and maximum doubling levels."""

    target_abs_tol: float = 1e-8
    max_refinement_levels: int = 20

    def __post_init__(self):
        if self.target_abs_tol <= 0:
            raise ValueError("target_abs_tol must be positive")
        if self.max_refinement_levels < 1:
            raise ValueError("max_refinement_levels must be >= 1")


def refine_doubling(estimate: Callable[[int], float], spec: QuadratureSpec, what: str = "integral") -> float:
    """Run estimate(level) for level = 0, 1, ... until successive values agree.

    Stops once |I_k - I_{k-1}| < target_abs_tol / 2 and returns I_k; raises
    AccuracyError with the best estimate if the level budget runs out.
    """
    prev = estimate(0)
    diff = math.inf
    for level in range(1, spec.max_refinement_levels + 1):
        cur = estimate(level)
        diff = abs(cur - prev)
        if diff < spec.target_abs_tol / 2.0:
            return cur
        prev = cur
    raise AccuracyError(
        f"{what}: refinement budget exhausted (last delta {diff:.3e})",
        best_estimate=prev,
        achieved_tol=diff,
    )


# ---------------------------------------------------------------------------
# half-line panel integration

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _GL_CACHE:
        x, w = np.polynomial.legendre.leggauss(n)
        _GL_CACHE[n] = (x, w)
    return _GL_CACHE[n]


def _panel(fn_u, a: float, b: float) -> tuple[float, float]:
    """Integral of fn_u over [a, b] with an error estimate (GL16 vs GL32)."""
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    x16, w16 = _gl(16)
    x32, w32 = _gl(32)
    v16 = half * float(np.dot(w16, fn_u(mid + half * x16)))
    v32 = half * float(np.dot(w32, fn_u(mid + half * x32)))
    return v32, abs(v32 - v16)


_U_CAP = 690.0  # e^u stays inside float range


def integrate_halfline(
    fn,
    lo: float,
    rel_tol: float = 1e-12,
    abs_floor: float = 1e-300,
    max_levels: int = 20,
) -> tuple[float, float]:
    """Integral of fn(x) dx over (lo, inf), fn vectorized and nonnegative-ish.

    Substitutes x = e^u and walks unit panels in u, expanding the window until
    wing panels are negligible, then bisects the worst panels.  Returns
    (value, error_bound).  Raises DivergenceError when the wings refuse to
    decay inside the representable range, AccuracyError when panel refinement
    stalls.
    """
    if lo < 0:
        raise ValueError("lo must be >= 0")

    def fn_u(u):
        u = np.asarray(u, dtype=float)
        x = np.exp(u)
        with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
            vals = np.asarray(fn(x), dtype=float) * x
        if not np.all(np.isfinite(vals)):
            raise DivergenceError("integrand not finite on the half line")
        return vals

    u_lo = math.log(lo) if lo > 0 else 0.0
    # initial window
    left_open = lo == 0.0
    panels: list[tuple[float, float, float, float]] = []  # (a, b, value, err)

    def add_panel(a, b):
        v, e = _panel(fn_u, a, b)
        panels.append((a, b, v, e))
        return v

    a0 = u_lo
    for k in range(4):
        add_panel(a0 + k, a0 + k + 1)
    if left_open:
        for k in range(1, 5):
            add_panel(a0 - k, a0 - k + 1)

    def total():
        return sum(p[2] for p in panels)

    def wing_tol():
        return max(rel_tol * abs(total()), abs_floor) / 8.0

    # expand right
    hi = max(p[1] for p in panels)
    quiet = 0
    last_v = math.inf
    while quiet < 3:
        if hi >= _U_CAP:
            raise DivergenceError("right wing not converged inside representable range")
        v = add_panel(hi, hi + 1.0)
        if abs(v) < wing_tol() and abs(v) <= abs(last_v) + abs_floor:
            quiet += 1
        else:
            quiet = 0
        last_v = v
        hi += 1.0

    # expand left (only for lo == 0)
    if left_open:
        lo_u = min(p[0] for p in panels)
        quiet = 0
        last_v = math.inf
        while quiet < 3:
            if lo_u <= -_U_CAP:
                raise DivergenceError("left wing not converged near zero")
            v = add_panel(lo_u - 1.0, lo_u)
            if abs(v) < wing_tol() and abs(v) <= abs(last_v) + abs_floor:
                quiet += 1
            else:
                quiet = 0
            last_v = v
            lo_u -= 1.0

    # refine worst panels
    heap = [(-p[3], i) for i, p in enumerate(panels)]
    heapq.heapify(heap)
    splits = 0
    max_splits = max_levels * max(len(panels), 8)
    while True:
        err_total = sum(p[3] for p in panels)
        val_total = total()
        target = max(rel_tol * abs(val_total), abs_floor)
        if err_total <= target:
            return val_total, err_total
        if splits >= max_splits or not heap:
            raise AccuracyError(
                "half-line panel refinement stalled",
                best_estimate=val_total,
                achieved_tol=err_total,
            )
        neg_err, i = heapq.heappop(heap)
        a, b, v, e = panels[i]
        if -neg_err != e:  # stale entry; the fresh one is already queued
            continue
        m = 0.5 * (a + b)
        v1, e1 = _panel(fn_u, a, m)
        v2, e2 = _panel(fn_u, m, b)
        panels[i] = (a, m, v1, e1)
        panels.append((m, b, v2, e2))
        heapq.heappush(heap, (-e1, i))
        heapq.heappush(heap, (-e2, len(panels) - 1))
        splits += 1


def integrate_log_interval(fn, a: float, b: float, rel_tol: float = 1e-12) -> tuple[float, float]:
    """Integral of fn(x) dx over [a, b], 0 < a < b, via log-spaced panels."""
    if not (0 < a < b):
        raise ValueError("need 0 < a < b")

    def fn_u(u):
        u = np.asarray(u, dtype=float)
        x = np.exp(u)
        with np.errstate(over="ignore", under="ignore"):
            vals = np.asarray(fn(x), dtype=float) * x
        if not np.all(np.isfinite(vals)):
            raise DivergenceError("integrand not finite on the interval")
        return vals

    ua, ub = math.log(a), math.log(b)
    n0 = max(4, int(math.ceil(ub - ua)))
    edges = np.linspace(ua, ub, n0 + 1)
    panels = []
    for i in range(n0):
        v, e = _panel(fn_u, edges[i], edges[i + 1])
        panels.append((edges[i], edges[i + 1], v, e))
    heap = [(-p[3], i) for i, p in enumerate(panels)]
    heapq.heapify(heap)
    splits = 0
    while True:
        err_total = sum(p[3] for p in panels)
        val_total = sum(p[2] for p in panels)
        if err_total <= max(rel_tol * abs(val_total), 1e-300):
            return val_total, err_total
        if splits > 20 * len(panels) + 400:
            raise AccuracyError(
                "interval panel refinement stalled",
                best_estimate=val_total,
                achieved_tol=err_total,
            )
        neg_err, i = heapq.heappop(heap)
        pa, pb, v, e = panels[i]
        if -neg_err != e:
            continue
        m = 0.5 * (pa + pb)
        v1, e1 = _panel(fn_u, pa, m)
        v2, e2 = _panel(fn_u, m, pb)
        panels[i] = (pa, m, v1, e1)
        panels.append((m, pb, v2, e2))
        heapq.heappush(heap, (-e1, i))
        heapq.heappush(heap, (-e2, len(panels) - 1))
        splits += 1
