"""Command-line front end.

Each subcommand assembles a JSON request, runs it through the in-process
HTTP service (no socket, no daemon), and writes a deterministic report

    {"schema": 1, "command": ..., "inputs": ..., "results": ..., "meta": ...}

to stdout or --output.  Floats are serialized with 17 significant digits, so
two runs with the same inputs and seed produce byte-identical reports except
for meta.wall_time_s.

Exit codes: 0 success; 1 an accuracy budget was exhausted (the report is
still written, with the best estimate); 2 invalid input (message on stderr,
no report).
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import sys
import time
from typing import Any

import httpx

from .reporting import SCHEMA_VERSION, dumps_canonical, dumps_csv

_SPEC_COLS = ["family", "r", "z_re", "z_im", "N", "delta_re", "delta_im", "variant"]
_ROW_COLS = _SPEC_COLS + [
    "t",
    "n",
    "s1_lower",
    "s1_upper",
    "antidiag_lower",
    "bracketing_only",
    "bound_smooth",
    "bound_sampled",
]

COLUMNS: dict[str, list[str]] = {
    "schatten": _SPEC_COLS
    + ["size", "step", "t", "s1", "tail_bound", "s1_upper", "antidiag_lower"],
    "besov": [
        "k",
        "n_coeffs",
        "besov_b11",
        "peller_g",
        "s1_exact",
        "sandwich_lower",
        "sandwich_upper",
        "sandwich_ok",
    ],
    "certify": _ROW_COLS,
    "sweep": _ROW_COLS,
    "torus": [
        "mode",
        "m",
        "d",
        "count",
        "s",
        "t",
        "samples",
        "seed",
        "value",
        "std_error",
        "bias_bound",
        "exact",
        "lhs",
        "rhs",
        "ratio",
        "max_abs_error",
        "max_abs_value",
    ],
    "witness": [
        "radius",
        "n_gens",
        "n_words",
        "truncation",
        "s1_truncated",
        "s1_tail",
        "certificate",
        "parity_even_re",
        "parity_even_im",
        "parity_odd_re",
        "parity_odd_im",
        "parity_remainder",
        "p_norm",
        "q_norm",
        "max_pair_error",
        "tree_verified",
        "trials",
        "seed",
        "empirical_lower",
        "empirical_leq_certificate",
    ],
    "check": ["suite", "case", "lhs", "rhs", "slack", "ok"],
}


class InputError(Exception):
    pass


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    raw = os.environ.get("CBRADIAL_SEED", "")
    if not raw:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"CBRADIAL_SEED must be an integer, got {raw!r}")


def _parse_json_list(text: str, what: str) -> list:
    try:
        val = json.loads(text)
    except json.JSONDecodeError:
        try:
            val = [float(x) for x in text.split(",") if x.strip()]
        except ValueError:
            raise InputError(f"--{what} must be a JSON list or comma-separated numbers")
    if not isinstance(val, list) or not val:
        raise InputError(f"--{what} must be a nonempty list")
    return val


def _parse_interval(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError("--s takes an interval: two comma-separated numbers, e.g. 0.5,2.0")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise InputError("--s takes an interval: two comma-separated numbers, e.g. 0.5,2.0")


def _spec_payload(args) -> dict:
    spec: dict[str, Any] = {"family": args.family}
    if args.r is not None:
        spec["r"] = args.r
    if args.z is not None:
        spec["z"] = args.z
    if args.N is not None:
        spec["N"] = args.N
    if args.delta is not None:
        spec["delta"] = args.delta
    if args.variant is not None:
        spec["variant"] = args.variant
    return spec


def _build_request(args) -> tuple[str, dict]:
    cmd = args.command
    if cmd == "schatten":
        return "/v1/schatten", {
            "spec": _spec_payload(args),
            "size": args.size,
            "step": args.step,
            "t": args.t,
        }
    if cmd == "besov":
        if (args.coeffs is None) == (args.k is None):
            raise InputError("give exactly one of --coeffs or --k")
        payload: dict[str, Any] = {}
        if args.coeffs is not None:
            payload["coeffs"] = _parse_json_list(args.coeffs, "coeffs")
        if args.k is not None:
            payload["k"] = args.k
        if args.tol is not None:
            payload["tol"] = args.tol
        if args.max_levels is not None:
            payload["max_levels"] = args.max_levels
        return "/v1/besov", payload
    if cmd == "certify":
        payload = {"spec": _spec_payload(args), "step": args.step}
        if args.grid is not None and args.grid != "default":
            payload["t_grid"] = [float(x) for x in _parse_json_list(args.grid, "grid")]
        if args.truncation is not None:
            payload["n"] = args.truncation
        if args.alpha is not None:
            payload["alpha"] = args.alpha
        return "/v1/certify", payload
    if cmd == "sweep":
        n_list = [int(x) for x in _parse_json_list(args.n_list, "n-list")]
        payload = {"family": args.family, "n_list": n_list, "step": args.step}
        if args.delta is not None:
            payload["delta"] = args.delta
        return "/v1/sweep", payload
    if cmd == "torus":
        seed = _resolve_seed(args.seed)
        payload = {"mode": args.mode, "d": args.d, "seed": seed}
        if args.mode == "identity":
            payload.update(m=args.m, count=args.count)
        elif args.mode == "l1":
            s, t = _parse_interval(args.s)
            payload.update(s=s, t=t, samples=args.samples)
        else:
            if args.coeffs is None:
                raise InputError("transfer modes need --coeffs")
            payload.update(
                coeffs=_parse_json_list(args.coeffs, "coeffs"), samples=args.samples
            )
        return "/v1/torus", payload
    if cmd == "witness":
        seed = _resolve_seed(args.seed)
        payload = {
            "radius": args.radius,
            "n_gens": args.n_gens,
            "trials": args.trials,
            "seed": seed,
        }
        if args.coeffs is not None:
            payload["coeffs"] = _parse_json_list(args.coeffs, "coeffs")
        else:
            payload["rate"] = args.rate
        if args.truncation is not None:
            payload["truncation"] = args.truncation
        return "/v1/witness", payload
    if cmd == "check":
        seed = _resolve_seed(args.seed)
        return "/v1/check", {
            "seed": seed,
            "trials": args.trials,
            "dyadic_pairs": args.dyadic_pairs,
            "slack_tol": args.slack_tol,
        }
    raise InputError(f"unknown command {cmd!r}")


def _post(path: str, payload: dict) -> tuple[int, dict]:
    from .service import app

    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://cbradial", timeout=None
        ) as client:
            r = await client.post(path, json=payload)
            return r.status_code, r.json()

    return asyncio.run(go())


def _flatten(results: dict) -> dict:
    """One CSV row: {re, im} sub-dicts become _re/_im columns, lists drop."""
    out: dict[str, Any] = {}
    for k, v in results.items():
        if isinstance(v, dict) and set(v) == {"re", "im"}:
            out[f"{k}_re"] = v["re"]
            out[f"{k}_im"] = v["im"]
        elif isinstance(v, list):
            continue
        else:
            out[k] = v
    return out


def _render(command: str, payload: dict, envelope: dict, fmt: str, wall: float) -> str:
    results = envelope.get("results") or {}
    if fmt == "csv":
        cols = COLUMNS[command]
        if command in ("certify", "sweep", "check"):
            rows = results.get("rows", [])
        else:
            rows = [_flatten(results)] if results else []
        return dumps_csv(cols, rows)
    report = {
        "schema": SCHEMA_VERSION,
        "command": command,
        "inputs": payload,
        "results": results,
        "meta": {
            "status": envelope.get("status"),
            "error": envelope.get("error"),
            "wall_time_s": wall,
        },
    }
    return dumps_canonical(report)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default=None, help="write the report here instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker hint; results never depend on it")


def _add_spec_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--family",
        required=True,
        choices=("heat", "fejer", "bochner_riesz", "powerlaw"),
    )
    p.add_argument("--r", type=float, default=None, help="heat exponent r > 0")
    p.add_argument("--z", default=None, help="complex scale, e.g. 1, 2+0.5j")
    p.add_argument("--N", type=int, default=None, help="cutoff order for the finite kernels")
    p.add_argument("--delta", default=None, help="smoothing exponent, complex accepted")
    p.add_argument("--variant", default=None, choices=("one_plus", "max_one"))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cbradial",
        description="Trace-norm certificates for radial Fourier multipliers",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schatten", help="trace norm of one truncated Hankel matrix")
    _add_spec_flags(p)
    p.add_argument("--size", type=int, default=64, help="truncation rank")
    p.add_argument("--step", type=int, default=0, choices=(0, 1, 2), help="0 = raw symbol")
    p.add_argument("--t", type=float, default=1.0, help="time/scale parameter")
    _add_common(p)

    p = sub.add_parser("besov", help="dyadic-sum and disk-kernel norms of a finite sequence")
    p.add_argument("--coeffs", default=None, help="JSON list of coefficients from n = 0")
    p.add_argument("--k", type=int, default=None, help="use the monomial delta_k instead")
    p.add_argument("--tol", type=float, default=None, help="quadrature target")
    p.add_argument("--max-levels", type=int, default=None, help="quadrature refinement cap")
    _add_common(p)

    p = sub.add_parser("certify", help="sup over t of the bracketed trace norm, with bounds")
    _add_spec_flags(p)
    p.add_argument("--grid", default=None, help='JSON list of t values, or "default"')
    p.add_argument("--truncation", type=int, default=None, help="pin every row to this rank")
    p.add_argument("--step", type=int, default=2, choices=(1, 2))
    p.add_argument("--alpha", type=float, default=None, help="weight split in (0, 1/2]")
    _add_common(p)

    p = sub.add_parser("sweep", help="exact trace norms across cutoff orders N")
    p.add_argument("--family", required=True, choices=("fejer", "bochner_riesz"))
    p.add_argument("--n-list", required=True, help="orders, e.g. 4,8,16,32 or JSON")
    p.add_argument("--step", type=int, default=1, choices=(1, 2))
    p.add_argument("--delta", default=None)
    _add_common(p)

    p = sub.add_parser("torus", help="divided-difference kernels on [0, pi]^d")
    p.add_argument(
        "--mode",
        default="identity",
        choices=("identity", "l1", "transfer", "transfer_twosided"),
    )
    p.add_argument("--m", type=int, default=4, help="lattice ball radius (identity mode)")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--count", type=int, default=1000, help="evaluation points (identity mode)")
    p.add_argument("--s", default="0.5,2.0", help="indicator interval, e.g. 0.5,2.0")
    p.add_argument("--samples", type=int, default=100000, help="Monte Carlo sample count")
    p.add_argument("--coeffs", default=None, help="radial profile for transfer modes")
    p.add_argument("--seed", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("witness", help="Schur factorization certificate on the tree")
    p.add_argument("--rate", type=float, default=0.5, help="geometric symbol rate in (0, 1)")
    p.add_argument("--coeffs", default=None, help="finite symbol values instead of --rate")
    p.add_argument("--radius", type=int, default=3, help="verification ball radius")
    p.add_argument("--n-gens", type=int, default=2)
    p.add_argument("--truncation", type=int, default=None)
    p.add_argument("--trials", type=int, default=0, help="random empirical lower bounds")
    p.add_argument("--seed", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("check", help="run the randomized inequality suites")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dyadic-pairs", type=int, default=20)
    p.add_argument("--slack-tol", type=float, default=1e-7)
    p.add_argument("--seed", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("serve", help="run the HTTP service on a socket")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    try:
        if getattr(args, "jobs", 1) < 1:
            raise InputError("--jobs must be >= 1")
        path, payload = _build_request(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    start = time.perf_counter()
    status_code, body = _post(path, payload)
    wall = time.perf_counter() - start

    if status_code != 200:
        detail = body.get("detail", body)
        print(f"error: {detail}", file=sys.stderr)
        return 2

    text = _render(args.command, payload, body, args.format, wall)
    _emit(text, args.output)
    return 0 if body.get("status") == "ok" else 1


if __name__ == "__main__":
    sys.exit(main())
