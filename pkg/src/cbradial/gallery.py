"""Radial symbol families and the t-sweep / order-sweep drivers.

Families: heat (n -> exp(-z n^r)), fejer (triangular cutoff), bochner_riesz
(smoothed quadratic cutoff), powerlaw ((1+n)^-z or max(1,n)^-z).  The sweep
drivers bracket the trace norm of the step-difference Hankel matrix of the
t-scaled symbol across a t-grid (or across cutoff orders N), attach the
smooth-symbol derivative bounds where one exists, and feed least-squares
growth fits.
"""

from __future__ import annotations

import cmath
import dataclasses
import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import AccuracyError, DivergenceError
from .hankel import build_hankel, schatten1
from .seqsym import (
    DiscreteSymbol,
    FiniteTail,
    PowerTail,
    StretchedExpTail,
    antidiag_tail_sum,
    difference,
    eval_range,
)
from .smoothbound import SmoothSymbol, bound_report

_FAMILIES = ("heat", "fejer", "bochner_riesz", "powerlaw")
_VARIANTS = ("one_plus", "max_one")
N_CAP_DEFAULT = 1024
_TAIL_REL = 1e-6


@dataclass(frozen=True)
class FamilySpec:
    """Validated family parameters.

    heat:          r > 0, Re z > 0       (n -> exp(-z n^r))
    fejer:         n >= 1                (n -> (1 - k/N)_+)
    bochner_riesz: n >= 1, Re delta > 0  (k -> (1 - k^2/N^2)_+^delta)
    powerlaw:      Re z > 0, variant     ((1+k)^-z or max(1,k)^-z)
    """

    family: str
    r: float = 1.0
    z: complex = 1.0 + 0.0j
    n: int = 16
    delta: complex = 2.0 + 0.0j
    variant: str = "one_plus"

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "delta", complex(self.delta))
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "n", int(self.n))
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "heat":
            if self.r <= 0:
                raise ValueError("heat exponent r must be positive")
            if self.z.real <= 0:
                raise ValueError("heat rate z must have positive real part")
        elif self.family in ("fejer", "bochner_riesz"):
            if self.n < 1:
                raise ValueError("cutoff N must be >= 1")
            if self.family == "bochner_riesz" and self.delta.real <= 0:
                raise ValueError("delta must have positive real part")
        else:
            if self.z.real <= 0:
                raise ValueError("powerlaw exponent z must have positive real part")
            if self.variant not in _VARIANTS:
                raise ValueError(f"variant must be one of {_VARIANTS}")

    @property
    def omega(self) -> float:
        """|arg z| of the oscillatory rate (heat/powerlaw families)."""
        return abs(cmath.phase(self.z))


def spec_params(spec: FamilySpec) -> dict:
    """Flat JSON/CSV-ready echo of the parameters that matter for the family."""
    out: dict = {"family": spec.family}
    if spec.family == "heat":
        out.update(r=spec.r, z_re=spec.z.real, z_im=spec.z.imag)
    elif spec.family == "fejer":
        out.update(N=spec.n)
    elif spec.family == "bochner_riesz":
        out.update(N=spec.n, delta_re=spec.delta.real, delta_im=spec.delta.imag)
    else:
        out.update(z_re=spec.z.real, z_im=spec.z.imag, variant=spec.variant)
    return out


def _parse_complex(v) -> complex:
    if isinstance(v, Mapping):
        return complex(float(v.get("re", 0.0)), float(v.get("im", 0.0)))
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ValueError("complex value as a pair must be [re, im]")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, str):
        return complex(v.replace(" ", ""))
    return complex(v)


def spec_from_json(obj) -> FamilySpec:
    """FamilySpec from a JSON object or string; complex values accept
    numbers, [re, im] pairs, {re, im} objects, or strings like "1+2j"."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, Mapping):
        raise ValueError("family spec must be a JSON object")
    fam = obj.get("family")
    if fam not in _FAMILIES:
        raise ValueError(f"unknown family {fam!r}")
    kw: dict = {"family": fam}
    if "r" in obj:
        kw["r"] = float(obj["r"])
    if "z" in obj:
        kw["z"] = _parse_complex(obj["z"])
    if "N" in obj:
        kw["n"] = int(obj["N"])
    elif "n" in obj:
        kw["n"] = int(obj["n"])
    if "delta" in obj:
        kw["delta"] = _parse_complex(obj["delta"])
    if "variant" in obj:
        kw["variant"] = str(obj["variant"])
    return FamilySpec(**kw)


# ---------------------------------------------------------------------------
# symbols


def _heat_discrete(z: complex, r: float) -> DiscreteSymbol:
    real = z.imag == 0.0

    def ev(n, _z=z, _r=r, _real=real):
        arr = np.asarray(n, dtype=float)
        zz = _z.real if _real else _z
        return np.exp(-zz * arr**_r)

    return DiscreteSymbol(
        eval=ev,
        tail=StretchedExpTail(rate=z.real, exponent=r, coeff=1.0),
        description=f"exp(-({z:g}) n^{r:g})",
    )


def _powerlaw_discrete(z: complex, variant: str, t: float = 1.0) -> DiscreteSymbol:
    real = z.imag == 0.0

    def ev(n, _z=z, _v=variant, _t=t, _real=real):
        arr = np.asarray(n, dtype=float)
        base = 1.0 + _t * arr if _v == "one_plus" else np.maximum(1.0, _t * arr)
        return np.power(base, -(_z.real if _real else _z))

    p = z.real
    coeff = max(1.0, t**-p)
    if variant == "max_one":
        # max(1, x) >= (1 + x)/2
        coeff *= 2.0**p
    return DiscreteSymbol(
        eval=ev,
        tail=PowerTail(power=p, coeff=coeff),
        description=f"{variant}(t={t:g})^-({z:g})",
    )


def family_symbol(spec: FamilySpec) -> tuple[DiscreteSymbol, SmoothSymbol | None]:
    """(discrete symbol, paired smooth symbol where the family has one).

    heat and powerlaw/one_plus carry analytic first and second derivatives;
    the finite kernels and the kinked max(1,x) variant return None.
    """
    if spec.family == "heat":
        z, r = spec.z, spec.r

        def f(x, _z=z, _r=r):
            xx = np.asarray(x, dtype=float)
            return np.exp(-_z * xx**_r)

        def fp(x, _z=z, _r=r):
            xx = np.asarray(x, dtype=float)
            return -_z * _r * xx ** (_r - 1.0) * np.exp(-_z * xx**_r)

        def fpp(x, _z=z, _r=r):
            xx = np.asarray(x, dtype=float)
            e = np.exp(-_z * xx**_r)
            return _z * _r * xx ** (_r - 2.0) * (_z * _r * xx**_r - (_r - 1.0)) * e

        smooth = SmoothSymbol(
            f=f,
            f_prime=fp,
            f_second=fpp,
            sup_abs=1.0,
            sampled_tail=lambda s, _z=z, _r=r: StretchedExpTail(
                rate=_z.real * s**_r, exponent=_r, coeff=1.0
            ),
            description=f"exp(-({z:g}) x^{r:g})",
        )
        return _heat_discrete(z, r), smooth

    if spec.family == "fejer":
        nn = spec.n

        def ev(k, _n=nn):
            arr = np.asarray(k, dtype=float)
            return np.maximum(0.0, 1.0 - arr / _n)

        sym = DiscreteSymbol(
            eval=ev, tail=FiniteTail(last=nn - 1), description=f"triangular({nn})"
        )
        return sym, None

    if spec.family == "bochner_riesz":
        nn, delta = spec.n, spec.delta
        real = delta.imag == 0.0

        def ev(k, _n=nn, _d=delta, _real=real):
            arr = np.asarray(k, dtype=float)
            base = np.maximum(0.0, 1.0 - (arr / _n) ** 2)
            dd = _d.real if _real else _d
            out = np.where(base > 0.0, np.power(base + (base <= 0.0), dd), 0.0)
            return out

        sym = DiscreteSymbol(
            eval=ev,
            tail=FiniteTail(last=nn - 1),
            description=f"smoothed_cutoff({nn}, {delta:g})",
        )
        return sym, None

    # powerlaw
    z = spec.z
    disc = _powerlaw_discrete(z, spec.variant)
    if spec.variant != "one_plus":
        return disc, None

    def f(x, _z=z):
        return np.power(1.0 + np.asarray(x, dtype=float), -_z)

    def fp(x, _z=z):
        return -_z * np.power(1.0 + np.asarray(x, dtype=float), -_z - 1.0)

    def fpp(x, _z=z):
        return _z * (_z + 1.0) * np.power(1.0 + np.asarray(x, dtype=float), -_z - 2.0)

    smooth = SmoothSymbol(
        f=f,
        f_prime=fp,
        f_second=fpp,
        sup_abs=1.0,
        sampled_tail=lambda s, _z=z: PowerTail(
            power=_z.real, coeff=max(1.0, s**-_z.real)
        ),
        description=f"(1+x)^-({z:g})",
    )
    return disc, smooth


def scaled_discrete(spec: FamilySpec, t: float) -> DiscreteSymbol:
    """The t-scaled discrete symbol with an exact tail model.

    Heat scales in time (exp(-z t n^r), characteristic length t^{-1/r});
    powerlaw scales in space (profile evaluated at t n).  The finite kernels
    do not form a scaling family; only t = 1 is accepted for them (sweep
    those over N instead).
    """
    if t <= 0:
        raise ValueError("t must be positive")
    if spec.family == "heat":
        return _heat_discrete(spec.z * t, spec.r)
    if spec.family == "powerlaw":
        return _powerlaw_discrete(spec.z, spec.variant, t)
    if t != 1.0:
        raise ValueError(f"{spec.family} does not scale in t; sweep over N")
    return family_symbol(spec)[0]


def default_alpha(spec: FamilySpec) -> float:
    """Weight exponent for the derivative functionals of the smooth symbol.

    Kept below the heat exponent r (continuous weights diverge at 0 past it)
    and below Re z for the power law (decay runs out at infinity past it),
    capped at the admissible 1/2.
    """
    if spec.family == "heat":
        return 0.5 * min(spec.r, 1.0)
    if spec.family == "powerlaw":
        return 0.5 * min(spec.z.real, 1.0)
    return 0.25


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepRow:
    """One bracketed trace norm: s1_lower <= s1(infinite Hankel) <= s1_upper."""

    params: dict
    t: float
    n: int
    s1_lower: float
    s1_upper: float
    antidiag_lower: float
    bracketing_only: bool
    bound_smooth: float | None = None
    bound_sampled: float | None = None


@dataclass(frozen=True)
class SweepTable:
    """Rows of a sweep plus sup diagnostics.

    sup_at_endpoint means the grid maximum sat at an edge even after the
    one-shot extension (or the grid was caller-fixed); fits should treat such
    sups as saturation values rather than interior maxima.
    """

    rows: tuple[SweepRow, ...]
    step: int
    alpha: float | None
    sup_index: int
    grid_extended: bool
    sup_at_endpoint: bool

    @property
    def sup_row(self) -> SweepRow:
        return self.rows[self.sup_index]

    @property
    def sup_s1(self) -> float:
        return self.sup_row.s1_lower

    @property
    def sup_t(self) -> float:
        return self.sup_row.t


def _visible_lower_bounds(d: DiscreteSymbol, n: int) -> tuple[float, float]:
    """(max antidiagonal bound, Frobenius bound) from the visible band."""
    vals = np.abs(np.asarray(eval_range(d, 0, 2 * n - 2)))
    m = np.arange(2 * n - 1, dtype=float)
    anti = float(np.max((m + 1.0) * vals))
    counts = np.minimum(m + 1.0, 2.0 * n - 1.0 - m)
    frob = float(math.sqrt(float(np.sum(counts * vals**2))))
    return anti, frob


def _auto_truncation(d: DiscreteSymbol, cap: int) -> tuple[int, bool]:
    """Smallest doubling rank whose unseen mass is tiny next to the cheap
    lower estimate; flags bracketing-only when the cap stops growth first."""
    n = 32
    while True:
        anti, frob = _visible_lower_bounds(d, n)
        est = max(anti, frob, 1e-300)
        tail = antidiag_tail_sum(d, n)
        if tail < _TAIL_REL * est or n >= cap:
            return min(n, cap), not (tail < _TAIL_REL * est)
        n = min(2 * n, cap)


def _sweep_row(
    params: dict,
    d: DiscreteSymbol,
    t: float,
    n: int | None,
    cap: int,
    bound_smooth: float | None,
) -> SweepRow:
    if n is None:
        n_row, bracketing = _auto_truncation(d, cap)
    else:
        n_row = n
        tail0 = antidiag_tail_sum(d, n_row)
        anti0, frob0 = _visible_lower_bounds(d, n_row)
        bracketing = not (tail0 < _TAIL_REL * max(anti0, frob0, 1e-300))
    s1 = schatten1(build_hankel(d, n_row))
    tail = antidiag_tail_sum(d, n_row)
    anti, _ = _visible_lower_bounds(d, n_row)
    return SweepRow(
        params=params,
        t=t,
        n=n_row,
        s1_lower=max(s1, anti),
        s1_upper=s1 + tail,
        antidiag_lower=anti,
        bracketing_only=bracketing,
        bound_smooth=bound_smooth,
    )


def default_t_grid(spec: FamilySpec, cap: int = N_CAP_DEFAULT, points: int = 40) -> list[float]:
    """Geometric grid covering the resolvable-to-saturated range of t.

    For heat the low end tracks the truncation budget (t below cap^-r leaves
    the visible window flat); the characteristic scale floor(r)^-r is always
    injected so the sharp antidiagonal regime is sampled exactly.
    """
    if spec.family == "heat":
        lo = 1e-3 * float(cap) ** (-spec.r)
        hi = 50.0
        grid = set(np.geomspace(lo, hi, points).tolist())
        grid.add(max(1, math.floor(spec.r)) ** (-spec.r))
        grid.add(1.0)
        return sorted(grid)
    if spec.family == "powerlaw":
        return sorted(np.geomspace(1e-3, 1e3, points).tolist())
    return [1.0]


def sweep_s1(
    spec: FamilySpec,
    t_grid: Sequence[float] | None = None,
    n: int | None = None,
    step: int = 2,
    alpha: float | None = None,
) -> SweepTable:
    """Bracket s1 of the step-difference Hankel of the t-scaled symbol.

    n pins the truncation rank of every row; n = None sizes each row by its
    tail model (doubling, capped at 1024) and flags rows the cap could not
    resolve as bracketing-only.  A default grid auto-extends once when the
    sup lands on an edge; explicit grids are used as given and only flagged.
    """
    if step not in (1, 2):
        raise ValueError("step must be 1 or 2")
    cap = N_CAP_DEFAULT if n is None else n
    explicit_grid = t_grid is not None
    grid = sorted(float(t) for t in (t_grid if explicit_grid else default_t_grid(spec, cap)))
    if not grid:
        raise ValueError("t grid must be nonempty")
    if any(t <= 0 for t in grid):
        raise ValueError("t values must be positive")

    params = spec_params(spec)
    _, smooth = family_symbol(spec)
    a = None
    bsm = None
    if smooth is not None:
        a = default_alpha(spec) if alpha is None else alpha
        bsm = bound_report(smooth, a, t=1.0, sampled=False).bound_smooth

    def space_scale(t: float) -> float:
        # heat scales in time: exp(-z t n^r) = f(t^{1/r} n) for f = exp(-z x^r)
        return t ** (1.0 / spec.r) if spec.family == "heat" else t

    def row_at(t: float) -> SweepRow:
        d = difference(scaled_discrete(spec, t), step)
        return _sweep_row(params, d, t, n, cap, bsm)

    rows = [row_at(t) for t in grid]
    extended = False

    def argmax(rs: Sequence[SweepRow]) -> int:
        return int(np.argmax([r.s1_lower for r in rs]))

    idx = argmax(rows)
    if not explicit_grid and len(rows) >= 2 and idx in (0, len(rows) - 1):
        lo, hi = rows[0].t, rows[-1].t
        ratio = (hi / lo) ** (1.0 / max(len(rows) - 1, 1))
        if idx == 0:
            extra = [lo / ratio**k for k in range(1, 7)]
        else:
            extra = [hi * ratio**k for k in range(1, 7)]
        rows = sorted(rows + [row_at(t) for t in extra], key=lambda r: r.t)
        extended = True
        idx = argmax(rows)

    at_edge = idx in (0, len(rows) - 1) and len(rows) >= 2

    if smooth is not None:
        sup = rows[idx]
        try:
            rep = bound_report(smooth, a, t=space_scale(sup.t), sampled=True)
            rows[idx] = dataclasses.replace(sup, bound_sampled=rep.bound_sampled)
        except (AccuracyError, DivergenceError):
            pass

    return SweepTable(
        rows=tuple(rows),
        step=step,
        alpha=a,
        sup_index=idx,
        grid_extended=extended,
        sup_at_endpoint=at_edge,
    )


def order_sweep(
    family: str,
    n_list: Sequence[int],
    step: int = 1,
    delta: complex = 2.0,
) -> SweepTable:
    """Exact s1 of the step-difference Hankel across cutoff orders N.

    For the finite kernels the difference symbol vanishes past N-1, so the
    N x N truncation carries the whole matrix and the bracket is tight.
    """
    if family not in ("fejer", "bochner_riesz"):
        raise ValueError("order sweeps apply to the finite kernels only")
    if step not in (1, 2):
        raise ValueError("step must be 1 or 2")
    if not n_list:
        raise ValueError("need at least one N")
    rows = []
    for nn in sorted(int(v) for v in n_list):
        spec = FamilySpec(family=family, n=nn, delta=delta)
        d = difference(family_symbol(spec)[0], step)
        s1 = schatten1(build_hankel(d, nn))
        anti, _ = _visible_lower_bounds(d, nn)
        rows.append(
            SweepRow(
                params=spec_params(spec),
                t=1.0,
                n=nn,
                s1_lower=max(s1, anti),
                s1_upper=s1,
                antidiag_lower=anti,
                bracketing_only=False,
            )
        )
    idx = int(np.argmax([r.s1_lower for r in rows]))
    return SweepTable(
        rows=tuple(rows),
        step=step,
        alpha=None,
        sup_index=idx,
        grid_extended=False,
        sup_at_endpoint=idx in (0, len(rows) - 1) and len(rows) >= 2,
    )


# ---------------------------------------------------------------------------
# fits


def fit_through_origin(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float]:
    """Least-squares slope of y = c x and the max relative deviation from it."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if len(x) < 3:
        raise ValueError("need at least 3 points to fit")
    denom = float(np.sum(x * x))
    if denom == 0.0:
        raise ValueError("degenerate abscissae")
    c = float(np.sum(x * y)) / denom
    pred = c * x
    if c == 0.0:
        resid = 0.0 if np.allclose(y, 0.0) else math.inf
    else:
        resid = float(np.max(np.abs(y - pred) / np.abs(pred)))
    return c, resid


_FIT_MODELS = ("constant", "linear-in-r", "log-in-N", "tan-r")


def growth_fit(tables, model: str) -> tuple[float, float]:
    """Fit sup-over-t values (or per-row values) against a growth model.

    constant     y ~ c             one point per table (its sup)
    linear-in-r  y ~ c (1 + r)     one point per table
    tan-r        y ~ c (1 + tan w)^{3/2} (1 + r),  w = |arg z|
    log-in-N     y ~ c ln N        one point per row (order sweeps)
    """
    if model not in _FIT_MODELS:
        raise ValueError(f"model must be one of {_FIT_MODELS}")
    if isinstance(tables, SweepTable):
        tables = [tables]
    xs: list[float] = []
    ys: list[float] = []
    if model == "log-in-N":
        for tb in tables:
            for row in tb.rows:
                nn = row.params.get("N")
                if nn is None:
                    raise ValueError("log-in-N fit needs order-sweep rows")
                xs.append(math.log(float(nn)))
                ys.append(row.s1_lower)
    else:
        for tb in tables:
            row = tb.sup_row
            p = row.params
            if model == "constant":
                x = 1.0
            elif model == "linear-in-r":
                x = 1.0 + float(p["r"])
            else:
                z = complex(p.get("z_re", 1.0), p.get("z_im", 0.0))
                w = abs(cmath.phase(z))
                x = (1.0 + math.tan(w)) ** 1.5 * (1.0 + float(p["r"]))
            xs.append(x)
            ys.append(row.s1_lower)
    return fit_through_origin(xs, ys)
