"""Request models for the HTTP surface; one model per command."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class SchattenRequest(BaseModel):
    """Trace norm of the (step-)difference Hankel truncation of a family symbol.

    step 0 means the symbol itself (no differencing)."""

    model_config = ConfigDict(extra="forbid")

    spec: dict
    size: int = Field(default=64, ge=1, le=4096)
    step: int = Field(default=0, ge=0, le=2)
    t: float = Field(default=1.0, gt=0)


class BesovRequest(BaseModel):
    """Dyadic-sum norm, disk-kernel norm, and the exact trace norm of a
    finitely supported coefficient sequence (or the monomial delta_k)."""

    model_config = ConfigDict(extra="forbid")

    coeffs: list | None = None
    k: int | None = Field(default=None, ge=0)
    tol: float | None = Field(default=None, gt=0)
    max_levels: int | None = Field(default=None, ge=1, le=30)


class CertifyRequest(BaseModel):
    """t-sweep of a scaling family with smooth-bound attachments."""

    model_config = ConfigDict(extra="forbid")

    spec: dict
    t_grid: list[float] | None = None
    n: int | None = Field(default=None, ge=1, le=4096)
    step: int = Field(default=2, ge=1, le=2)
    alpha: float | None = Field(default=None, gt=0, le=0.5)


class OrderSweepRequest(BaseModel):
    """Exact trace norms of a finite kernel family across cutoff orders N."""

    model_config = ConfigDict(extra="forbid")

    family: str
    n_list: list[int]
    step: int = Field(default=1, ge=1, le=2)
    delta: float | list | dict | None = None


class TorusRequest(BaseModel):
    """Divided-difference kernels on [0, pi]^d.

    modes: identity (divided difference vs direct lattice sum on random
    admissible points), l1 (Monte-Carlo L1 of the interval-indicator kernel;
    odd d uses the averaging reduction), transfer and transfer_twosided
    (radial kernel L1 vs its one-dimensional transfer symbol)."""

    model_config = ConfigDict(extra="forbid")

    mode: str = "identity"
    m: int = Field(default=4, ge=0)
    d: int = Field(default=2, ge=1, le=6)
    count: int = Field(default=1000, ge=1, le=100_000)
    s: float = 0.5
    t: float = 2.0
    samples: int = Field(default=100_000, ge=1000, le=5_000_000)
    seed: int = 0
    coeffs: list | None = None
    nodes_per_segment: int = Field(default=24, ge=4, le=128)


class WitnessRequest(BaseModel):
    """Schur-multiplier witness factorization on the free-group ball.

    The symbol is geometric (rate**n) unless explicit coefficients are given.
    trials > 0 adds the random empirical lower bound for comparison against
    the certificate."""

    model_config = ConfigDict(extra="forbid")

    rate: float | None = Field(default=0.5, gt=0, lt=1)
    coeffs: list | None = None
    radius: int = Field(default=3, ge=0, le=6)
    n_gens: int = Field(default=2, ge=1, le=4)
    truncation: int | None = Field(default=None, ge=1)
    trials: int = Field(default=0, ge=0, le=1000)
    seed: int = 0
    tail_tol: float = Field(default=1e-10, gt=0)


class CheckRequest(BaseModel):
    """Full inequality suite run."""

    model_config = ConfigDict(extra="forbid")

    seed: int = 0
    trials: int = Field(default=100, ge=1, le=10_000)
    dyadic_pairs: int = Field(default=20, ge=1, le=200)
    slack_tol: float = Field(default=1e-7, gt=0)
