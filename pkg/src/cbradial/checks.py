"""Aggregated inequality suites over seeded random instances.

Each row records both sides of one inequality that the library's bounds
promise; a violation is lhs > rhs + slack.  The suites cover the entrywise
Hankel multiplier bound, the L1-from-L2 interpolation bound, the dyadic block
bound, and the discrete-to-continuous transfer and subordination inequalities
over the whole smooth symbol family.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .besov import TrigPolynomial, dyadic_block_bound_check, l1_from_l2_check
from .gallery import FamilySpec, default_alpha, family_symbol
from .hankel import hadamard_hankel_bound_check
from .seqsym import PowerTail
from .smoothbound import subordination_check, transfer_checks

SLACK_DEFAULT = 1e-7


@dataclass(frozen=True)
class CheckRow:
    suite: str
    case: str
    lhs: float
    rhs: float

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    def ok(self, tol: float = SLACK_DEFAULT) -> bool:
        return self.lhs <= self.rhs + tol


@dataclass(frozen=True)
class CheckReport:
    rows: tuple[CheckRow, ...]
    slack_tol: float

    @property
    def violations(self) -> tuple[CheckRow, ...]:
        return tuple(r for r in self.rows if not r.ok(self.slack_tol))

    @property
    def passed(self) -> bool:
        return not self.violations


def smooth_family():
    """(name, SmoothSymbol, alpha, diff_tail) for every smooth gallery member.

    The power-law members declare the one-extra-power difference tail their
    derivative bound |f'(x)| = |z| (1+x)^{-Re z - 1} justifies.
    """
    out = []
    for r in (0.5, 1.0, 2.0, 4.0):
        spec = FamilySpec(family="heat", r=r, z=1.0)
        _, smooth = family_symbol(spec)
        out.append((f"heat r={r:g}", smooth, default_alpha(spec), None))
    for z in (1.0 + 0.0j, 2.0 + 0.0j, 1.0 + 1.0j):
        spec = FamilySpec(family="powerlaw", z=z)
        _, smooth = family_symbol(spec)
        dt = PowerTail(power=z.real + 1.0, coeff=abs(z))
        out.append((f"powerlaw z={z:g}", smooth, default_alpha(spec), dt))
    return out


def hadamard_suite(trials: int = 100, seed: int = 0) -> list[CheckRow]:
    """Entrywise multiplier bound on random sparse coefficient sets times
    random dense matrices."""
    rng = np.random.default_rng(np.random.SeedSequence((seed, 0)))
    rows = []
    for i in range(trials):
        ks = rng.choice(np.arange(-8, 9), size=5, replace=False)
        cs = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        a = {int(k): complex(c) for k, c in zip(ks, cs)}
        b = (rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))) / np.sqrt(8)
        lhs, rhs = hadamard_hankel_bound_check(a, b)
        rows.append(CheckRow("hadamard-hankel", f"trial {i}", lhs, rhs))
    return rows


def l1_from_l2_suite(trials: int = 100, seed: int = 0) -> list[CheckRow]:
    """L1 <= (2/sqrt(pi)) sqrt(L2 . shifted-L2) on random trig polynomials."""
    rng = np.random.default_rng(np.random.SeedSequence((seed, 1)))
    rows = []
    for i in range(trials):
        ks = rng.choice(np.arange(-12, 13), size=6, replace=False)
        cs = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        p = TrigPolynomial({int(k): complex(c) for k, c in zip(ks, cs)})
        lhs, rhs = l1_from_l2_check(p)
        rows.append(CheckRow("l1-from-l2", f"trial {i}", lhs, rhs))
    return rows


def dyadic_suite(pairs: int = 20) -> list[CheckRow]:
    """Dyadic block bound over smooth family members and block indices."""
    rows = []
    for name, smooth, _alpha, _dt in smooth_family():
        for n in (1, 2, 3):
            if len(rows) >= pairs:
                return rows
            lhs, rhs = dyadic_block_bound_check(smooth, n)
            rows.append(CheckRow("dyadic-block", f"{name}, block {n}", lhs, rhs))
    return rows


def transfer_suite() -> list[CheckRow]:
    labels = ("1/2-a sq", "1/2+a sq", "3/2-a", "3/2+a")
    rows = []
    for name, smooth, alpha, dt in smooth_family():
        for label, (lhs, rhs) in zip(labels, transfer_checks(smooth, alpha, dt)):
            rows.append(CheckRow("transfer", f"{name}, {label}", lhs, rhs))
    return rows


def subordination_suite() -> list[CheckRow]:
    rows = []
    for name, smooth, alpha, _dt in smooth_family():
        v1, v2, v3, v4 = subordination_check(smooth, alpha)
        rows.append(CheckRow("subordination", f"{name}, derivative", v1, v2))
        rows.append(CheckRow("subordination", f"{name}, l1", v3, v4))
    return rows


def check_all(
    seed: int = 0,
    trials: int = 100,
    dyadic_pairs: int = 20,
    slack_tol: float = SLACK_DEFAULT,
) -> CheckReport:
    """Run every suite; the report counts violations beyond slack_tol."""
    rows = (
        hadamard_suite(trials, seed)
        + l1_from_l2_suite(trials, seed)
        + dyadic_suite(dyadic_pairs)
        + transfer_suite()
        + subordination_suite()
    )
    return CheckReport(rows=tuple(rows), slack_tol=slack_tol)
