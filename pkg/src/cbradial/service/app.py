"""HTTP surface: one endpoint per command, returning {status, error, results}.

Input errors map to 400; exhausted accuracy budgets map to a 200 envelope
with status "accuracy_error" so the caller still gets the best estimate and
can exit accordingly.  Handlers are pure functions of the request (seeds are
explicit), so identical requests produce identical results payloads.
"""

from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import __version__
from ..besov import besov_b11, peller_disk_l1
from ..checks import check_all
from ..errors import AccuracyError, DivergenceError
from ..gallery import (
    _parse_complex,
    _visible_lower_bounds,
    growth_fit,
    order_sweep,
    scaled_discrete,
    spec_from_json,
    spec_params,
    sweep_s1,
)
from ..hankel import build_hankel, schatten1
from ..quadrature import QuadratureSpec
from ..seqsym import (
    DiscreteSymbol,
    ExponentialTail,
    antidiag_tail_sum,
    difference,
    finite_symbol,
)
from ..toruszd import (
    _chi_divdiff_raw,
    dirichlet_divdiff,
    dirichlet_lattice,
    indicator_divdiff_averaged,
    l1_torus_mc,
    radial_l1_transfer_check,
    radial_l1_transfer_check_twosided,
)
from ..witness import empirical_multiplier_lower, tree_distance, witness_from_symbol
from .models import (
    BesovRequest,
    CertifyRequest,
    CheckRequest,
    OrderSweepRequest,
    SchattenRequest,
    TorusRequest,
    WitnessRequest,
)


def _c(v: complex) -> dict:
    v = complex(v)
    return {"re": float(v.real), "im": float(v.imag)}


def _profile(coeffs) -> list[complex]:
    if not coeffs:
        raise ValueError("coeffs must be a nonempty list")
    return [_parse_complex(v) for v in coeffs]


def _row_payload(row) -> dict:
    out = dict(row.params)
    out.update(
        t=float(row.t),
        n=int(row.n),
        s1_lower=float(row.s1_lower),
        s1_upper=float(row.s1_upper),
        antidiag_lower=float(row.antidiag_lower),
        bracketing_only=bool(row.bracketing_only),
        bound_smooth=None if row.bound_smooth is None else float(row.bound_smooth),
        bound_sampled=None if row.bound_sampled is None else float(row.bound_sampled),
    )
    return out


def _do_schatten(req: SchattenRequest) -> dict:
    spec = spec_from_json(req.spec)
    sym = scaled_discrete(spec, req.t)
    d = difference(sym, req.step) if req.step else sym
    s1 = schatten1(build_hankel(d, req.size))
    tail = antidiag_tail_sum(d, req.size)
    anti, _frob = _visible_lower_bounds(d, req.size)
    out = {
        **spec_params(spec),
        "size": int(req.size),
        "step": int(req.step),
        "t": float(req.t),
        "s1": float(s1),
        "tail_bound": float(tail),
        "s1_upper": float(s1 + tail),
        "antidiag_lower": float(anti),
    }
    return out


def _do_besov(req: BesovRequest) -> dict:
    if (req.coeffs is None) == (req.k is None):
        raise ValueError("give exactly one of coeffs or k")
    if req.k is not None:
        values = [0.0] * req.k + [1.0]
    else:
        values = _profile(req.coeffs)
    a = {n: complex(v) for n, v in enumerate(values) if v != 0}
    if not a:
        raise ValueError("all coefficients are zero")
    quad = None
    if req.tol is not None or req.max_levels is not None:
        quad = QuadratureSpec(
            target_abs_tol=req.tol if req.tol is not None else 1e-8,
            max_refinement_levels=req.max_levels if req.max_levels is not None else 20,
        )
    b11 = besov_b11(a, quad)
    g = peller_disk_l1(a, quad)
    s1 = schatten1(build_hankel(finite_symbol(values), len(values)))
    return {
        "k": req.k,
        "n_coeffs": len(values),
        "besov_b11": float(b11),
        "peller_g": float(g),
        "s1_exact": float(s1),
        "sandwich_lower": float(math.pi / 8.0 * g),
        "sandwich_upper": float(g),
        "sandwich_ok": bool(math.pi / 8.0 * g - 1e-9 <= s1 <= g + 1e-9),
    }


def _do_certify(req: CertifyRequest) -> dict:
    spec = spec_from_json(req.spec)
    table = sweep_s1(spec, t_grid=req.t_grid, n=req.n, step=req.step, alpha=req.alpha)
    return {
        "alpha": None if table.alpha is None else float(table.alpha),
        "step": int(table.step),
        "sup_index": int(table.sup_index),
        "sup_at_endpoint": bool(table.sup_at_endpoint),
        "grid_extended": bool(table.grid_extended),
        "sup": _row_payload(table.sup_row),
        "rows": [_row_payload(r) for r in table.rows],
    }


def _do_sweep(req: OrderSweepRequest) -> dict:
    delta = 2.0 + 0.0j if req.delta is None else _parse_complex(req.delta)
    table = order_sweep(req.family, req.n_list, step=req.step, delta=delta)
    fit_slope = fit_resid = None
    if len(table.rows) >= 3:
        fit_slope, fit_resid = growth_fit(table, "log-in-N")
    return {
        "family": req.family,
        "step": int(table.step),
        "fit_log_slope": None if fit_slope is None else float(fit_slope),
        "fit_residual": None if fit_resid is None else float(fit_resid),
        "rows": [_row_payload(r) for r in table.rows],
    }


def _admissible_points(d: int, count: int, seed: int, sep_min: float = 1e-3) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence((seed, 0)))
    out = []
    have = 0
    while have < count:
        pts = math.pi * rng.random((4096, d))
        if d >= 2:
            c = np.cos(pts)
            gaps = np.abs(c[:, :, None] - c[:, None, :])
            gaps[:, np.arange(d), np.arange(d)] = np.inf
            pts = pts[gaps.min(axis=(1, 2)) >= sep_min]
        out.append(pts[: count - have])
        have += len(out[-1])
    return np.vstack(out)


def _do_torus(req: TorusRequest) -> dict:
    if req.mode == "identity":
        pts = _admissible_points(req.d, req.count, req.seed)
        dd = dirichlet_divdiff(req.m, pts)
        lat = dirichlet_lattice(req.m, pts)
        err = float(np.max(np.abs(dd - lat)))
        return {
            "mode": req.mode,
            "m": int(req.m),
            "d": int(req.d),
            "count": int(req.count),
            "seed": int(req.seed),
            "max_abs_error": err,
            "max_abs_value": float(np.max(np.abs(lat))),
        }
    if req.mode == "l1":
        s, t = float(req.s), float(req.t)
        if not (0.0 <= s < t <= math.pi):
            raise ValueError("need 0 <= s < t <= pi")
        if req.d % 2 == 1 and req.d > 1:
            kernel = lambda pts: indicator_divdiff_averaged(
                s, t, pts, nodes_per_segment=req.nodes_per_segment
            )
        else:
            kernel = lambda pts: _chi_divdiff_raw(s, t, pts)
        est = l1_torus_mc(kernel, req.d, req.samples, req.seed, domain="0pi")
        return {
            "mode": req.mode,
            "d": int(req.d),
            "s": s,
            "t": t,
            "samples": int(est.samples),
            "seed": int(est.seed),
            "value": float(est.value),
            "std_error": float(est.std_error),
            "bias_bound": float(est.bias_bound),
            "exact": (t - s) if req.d == 1 else None,
        }
    if req.mode in ("transfer", "transfer_twosided"):
        prof = _profile(req.coeffs)
        fn = (
            radial_l1_transfer_check
            if req.mode == "transfer"
            else radial_l1_transfer_check_twosided
        )
        lhs, rhs = fn(prof, req.d, mc_samples=req.samples, seed=req.seed)
        return {
            "mode": req.mode,
            "d": int(req.d),
            "samples": int(req.samples),
            "seed": int(req.seed),
            "lhs": float(lhs),
            "rhs": float(rhs),
            "ratio": float(lhs / rhs) if rhs != 0 else math.inf,
        }
    raise ValueError(f"unknown torus mode {req.mode!r}")


def _do_witness(req: WitnessRequest) -> dict:
    if req.coeffs is not None:
        values = _profile(req.coeffs)
        phi = finite_symbol(values)
    else:
        if req.rate is None:
            raise ValueError("give rate or coeffs")
        q = float(req.rate)

        def ev(n, _q=q):
            return _q ** np.asarray(n, dtype=float)

        phi = DiscreteSymbol(
            eval=ev, tail=ExponentialTail(rate=q, coeff=1.0), description=f"{q:g}^n"
        )
    w = witness_from_symbol(
        phi,
        truncation=req.truncation,
        ball_radius=req.radius,
        n_gens=req.n_gens,
        tail_tol=req.tail_tol,
    )
    le, lo = w.parity_limits
    words = w.words
    max_err = 0.0
    for i, x in enumerate(words):
        for y in words[i:]:
            dxy = tree_distance(x, y)
            expected = complex(phi.eval(dxy)) - (le if dxy % 2 == 0 else lo)
            max_err = max(max_err, abs(w.inner(x, y) - expected))
    emp = None
    if req.trials > 0:
        emp = empirical_multiplier_lower(
            phi,
            ball_radius=req.radius,
            trials=req.trials,
            seed=req.seed,
            n_gens=req.n_gens,
        )
    return {
        "radius": int(w.ball_radius),
        "n_gens": int(w.n_gens),
        "n_words": len(words),
        "truncation": int(w.truncation),
        "s1_truncated": float(w.s1_truncated),
        "s1_tail": float(w.s1_tail),
        "certificate": float(w.certificate),
        "parity_even": _c(le),
        "parity_odd": _c(lo),
        "parity_remainder": float(w.parity_remainder),
        "p_norm": float(w.p_norm),
        "q_norm": float(w.q_norm),
        "max_pair_error": float(max_err),
        "tree_verified": bool(w.tree_verified),
        "trials": int(req.trials),
        "seed": int(req.seed),
        "empirical_lower": None if emp is None else float(emp),
        "empirical_leq_certificate": None if emp is None else bool(emp <= w.certificate + 1e-9),
    }


def _do_check(req: CheckRequest) -> dict:
    report = check_all(
        seed=req.seed,
        trials=req.trials,
        dyadic_pairs=req.dyadic_pairs,
        slack_tol=req.slack_tol,
    )
    return {
        "seed": int(req.seed),
        "trials": int(req.trials),
        "dyadic_pairs": int(req.dyadic_pairs),
        "slack_tol": float(req.slack_tol),
        "n_rows": len(report.rows),
        "n_violations": len(report.violations),
        "passed": bool(report.passed),
        "rows": [
            {
                "suite": r.suite,
                "case": r.case,
                "lhs": float(r.lhs),
                "rhs": float(r.rhs),
                "slack": float(r.slack),
                "ok": bool(r.ok(report.slack_tol)),
            }
            for r in report.rows
        ],
    }


def _run(fn) -> dict:
    try:
        results = fn()
    except (ValueError, TypeError, KeyError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except (AccuracyError, DivergenceError) as e:
        results = {}
        best = getattr(e, "best_estimate", None)
        achieved = getattr(e, "achieved_tol", None)
        if best is not None:
            results["best_estimate"] = float(best)
        if achieved is not None:
            results["achieved_tol"] = float(achieved)
        return {"status": "accuracy_error", "error": str(e), "results": results}
    return {"status": "ok", "error": None, "results": results}


def create_app() -> FastAPI:
    app = FastAPI(title="cbradial", version=__version__, docs_url=None, redoc_url=None)

    @app.get("/v1/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/v1/schatten")
    def schatten(req: SchattenRequest):
        return _run(lambda: _do_schatten(req))

    @app.post("/v1/besov")
    def besov(req: BesovRequest):
        return _run(lambda: _do_besov(req))

    @app.post("/v1/certify")
    def certify(req: CertifyRequest):
        return _run(lambda: _do_certify(req))

    @app.post("/v1/sweep")
    def sweep(req: OrderSweepRequest):
        return _run(lambda: _do_sweep(req))

    @app.post("/v1/torus")
    def torus(req: TorusRequest):
        return _run(lambda: _do_torus(req))

    @app.post("/v1/witness")
    def witness(req: WitnessRequest):
        return _run(lambda: _do_witness(req))

    @app.post("/v1/check")
    def check(req: CheckRequest):
        return _run(lambda: _do_check(req))

    return app


app = create_app()
