"""Schur multiplier witnesses on the free-group tree.

For a radial function phi(n) whose step-2 difference b(n) = phi(n) - phi(n+2)
has a certified tail, the Hankel matrix H = (b(i+j)) factors as H = A* B, and
attaching the columns of B (resp. A) to geodesic rays out of each group
element produces vector families P, Q with

    <P(x), Q(y)> = phi(d(x, y)) - limit of phi along the parity of d(x, y).

The certified multiplier bound is then |l_even| + |l_odd| + ||H||_S1 (trace
norm of the truncation plus its declared tail).  Free group on >= 2
generators; the tree geometry makes the factorization lossless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import DivergenceError
from .hankel import build_hankel, schatten1, sqrt_factor
from .seqsym import (
    DiscreteSymbol,
    FiniteTail,
    TailModel,
    UnknownTail,
    abs_tail_sum,
    antidiag_tail_sum,
    difference,
    tail_s1_bound,
)

Word = tuple[int, ...]
# letters are nonzero ints: +i is the i-th generator, -i its inverse;
# canonical letter order for enumeration is 1, -1, 2, -2, ...

EMPTY: Word = ()


def _letter_key(letter: int) -> int:
    return 2 * abs(letter) - (2 if letter > 0 else 1)


def reduce_word(letters: Iterable[int]) -> Word:
    out: list[int] = []
    for l in letters:
        if l == 0:
            raise ValueError("letters are nonzero integers")
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def mul(x: Word, y: Word) -> Word:
    i = len(x)
    j = 0
    while i > 0 and j < len(y) and x[i - 1] == -y[j]:
        i -= 1
        j += 1
    return x[:i] + y[j:]


def inverse(x: Word) -> Word:
    return tuple(-l for l in reversed(x))


def common_prefix_len(x: Word, y: Word) -> int:
    n = 0
    for a, b in zip(x, y):
        if a != b:
            break
        n += 1
    return n


def tree_distance(x: Word, y: Word) -> int:
    """d(x, y) = |x^{-1} y|; reduced words cancel exactly their common prefix."""
    return len(x) + len(y) - 2 * common_prefix_len(x, y)


def ball(radius: int, n_gens: int = 2) -> list[Word]:
    """All reduced words of length <= radius, ordered by length then lexicon."""
    if radius < 0 or n_gens < 2:
        raise ValueError("need radius >= 0 and at least 2 generators")
    letters = sorted(
        [g for i in range(1, n_gens + 1) for g in (i, -i)], key=_letter_key
    )
    out: list[Word] = [EMPTY]
    frontier: list[Word] = [EMPTY]
    for _ in range(radius):
        nxt: list[Word] = []
        for w in frontier:
            for l in letters:
                if w and w[-1] == -l:
                    continue
                nxt.append(w + (l,))
        frontier = nxt
        out.extend(frontier)
    return out


@dataclass(frozen=True)
class GeodesicRay:
    """The geodesic from x that merges into the positive first-generator axis.

    Step i strips one trailing letter of x until the remaining word is the
    longest prefix of x lying on the axis, then advances along the axis.
    """

    origin: Word

    @property
    def axis_prefix(self) -> int:
        a = 0
        for l in self.origin:
            if l == 1:
                a += 1
            else:
                break
        return a

    def step(self, i: int) -> Word:
        if i < 0:
            raise ValueError("i must be nonnegative")
        n, a = len(self.origin), self.axis_prefix
        if i <= n - a:
            return self.origin[: n - i]
        return tuple([1] * (a + (i - (n - a))))

    def steps(self, count: int) -> list[Word]:
        return [self.step(i) for i in range(count)]


def geodesic_ray(x: Word) -> GeodesicRay:
    return GeodesicRay(origin=tuple(x))


def _parity_limits(phi: DiscreteSymbol, diff2: DiscreteSymbol, tol: float = 1e-12):
    """(l_even, l_odd, remainder_bound) estimated through the difference tail."""
    if isinstance(diff2.tail, UnknownTail):
        raise ValueError("parity limits need a certified tail on the step-2 difference")
    if isinstance(diff2.tail, FiniteTail):
        n_star = max((diff2.tail.last + 2 + 1) // 2, 1)
        rem = 0.0
    else:
        n_star = 8
        while True:
            rem = abs_tail_sum(diff2, 2 * n_star)
            if rem < tol:
                break
            if n_star > 1 << 22:
                raise DivergenceError("difference tail decays too slowly for parity limits")
            n_star *= 2
    l_even = complex(phi.eval(2 * n_star))
    l_odd = complex(phi.eval(2 * n_star + 1))
    return l_even, l_odd, rem


def required_truncation(diff2: DiscreteSymbol, tol: float = 1e-10, cap: int = 1 << 14) -> int:
    """Smallest truncation rank whose unseen anti-diagonal tail is below tol."""
    k = 4
    while k <= cap:
        if tail_s1_bound(diff2, k) < tol:
            return k
        k += max(2, k // 4)
    raise ValueError(f"no truncation rank up to {cap} certifies tail below {tol:g}")


@dataclass
class WitnessPair:
    """Finite-rank witness family over a ball of the free group."""

    truncation: int
    ball_radius: int
    n_gens: int
    words: list[Word]
    parity_limits: tuple[complex, complex]
    parity_remainder: float
    s1_truncated: float
    s1_tail: float
    certificate: float
    factor_a: np.ndarray
    factor_b: np.ndarray
    tree_verified: bool = True
    _ray_vertices: dict[Word, list[int]] = field(default_factory=dict, repr=False)
    _ray_index: dict[Word, dict[int, int]] = field(default_factory=dict, repr=False)
    _diag_suffix: dict[int, np.ndarray] = field(default_factory=dict, repr=False)

    @property
    def p_norm(self) -> float:
        """||P(x)|| for every x: the vertices along a geodesic are distinct."""
        return float(np.linalg.norm(self.factor_b, "fro"))

    @property
    def q_norm(self) -> float:
        return float(np.linalg.norm(self.factor_a, "fro"))

    def inner(self, x: Word, y: Word) -> complex:
        """<P(x), Q(y)> summed over the meet set of the two rays.

        Once the rays merge (index pair (i0, j0) with i0 + j0 = d(x, y)) they
        coincide forever, so the sum runs down one diagonal of A* B; suffix
        sums make each query O(truncation).
        """
        x, y = tuple(x), tuple(y)
        for w in (x, y):
            if w not in self._ray_vertices:
                raise ValueError("word outside the built ball")
        ry = self._ray_vertices[y]
        idx = self._ray_index[x]
        i0 = j0 = None
        for j in range(self.truncation):
            i = idx.get(ry[j])
            if i is not None:
                i0, j0 = i, j
                break
        if i0 is None:
            raise ValueError("rays do not meet inside the truncation")
        off = j0 - i0  # column minus row
        suffix = self._diag_suffix[off]
        return complex(suffix[i0 if off >= 0 else j0])


def witness_from_symbol(
    phi: DiscreteSymbol,
    truncation: int | None = None,
    ball_radius: int = 3,
    n_gens: int = 2,
    diff_tail: TailModel | None = None,
    tail_tol: float = 1e-10,
) -> WitnessPair:
    """Build the witness family for phi over a ball of the free group.

    `diff_tail` overrides the propagated tail model of the step-2 difference
    (callers must declare one for symbols, like constants, whose own tail is
    unknown but whose difference is certified).  Refuses truncations whose
    declared tail exceeds tail_tol, naming a sufficient rank.
    """
    diff2 = difference(phi, 2)
    if diff_tail is not None:
        diff2 = DiscreteSymbol(eval=diff2.eval, tail=diff_tail, description=diff2.description)
    if isinstance(diff2.tail, UnknownTail):
        raise ValueError("step-2 difference needs a certified tail model")
    # Two rays out of the radius-R ball can merge as late as index 2R, so the
    # truncation must cover that on top of the declared-tail requirement.
    needed = max(required_truncation(diff2, tail_tol), 2 * ball_radius + 1)
    if truncation is None:
        truncation = needed
    elif truncation < needed:
        raise ValueError(
            f"truncation {truncation} is too small for ball radius {ball_radius} at "
            f"tail tolerance {tail_tol:g}; use truncation >= {needed}"
        )

    l_even, l_odd, rem = _parity_limits(phi, diff2)
    h = build_hankel(diff2, truncation)
    fact = sqrt_factor(h)
    s1_tail = antidiag_tail_sum(diff2, truncation)
    cert = abs(l_even) + abs(l_odd) + fact.s1 + s1_tail

    words = ball(ball_radius, n_gens)
    intern: dict[Word, int] = {}

    def vid(w: Word) -> int:
        i = intern.get(w)
        if i is None:
            i = len(intern)
            intern[w] = i
        return i

    ray_vertices: dict[Word, list[int]] = {}
    ray_index: dict[Word, dict[int, int]] = {}
    for w in words:
        ray = geodesic_ray(w).steps(truncation)
        ids = [vid(v) for v in ray]
        ray_vertices[w] = ids
        ray_index[w] = {v: i for i, v in enumerate(ids)}

    recon = fact.a.conj().T @ fact.b
    diag_suffix: dict[int, np.ndarray] = {}
    for off in range(-(truncation - 1), truncation):
        d = np.diagonal(recon, offset=off)
        diag_suffix[off] = np.cumsum(d[::-1])[::-1]

    return WitnessPair(
        truncation=truncation,
        ball_radius=ball_radius,
        n_gens=n_gens,
        words=words,
        parity_limits=(l_even, l_odd),
        parity_remainder=rem,
        s1_truncated=fact.s1,
        s1_tail=s1_tail,
        certificate=cert,
        factor_a=fact.a,
        factor_b=fact.b,
        _ray_vertices=ray_vertices,
        _ray_index=ray_index,
        _diag_suffix=diag_suffix,
    )


def witness_inner(w: WitnessPair, x: Word, y: Word) -> complex:
    return w.inner(x, y)


def schur_certificate(
    phi: DiscreteSymbol,
    truncation: int | None = None,
    diff_tail: TailModel | None = None,
    tail_tol: float = 1e-10,
) -> float:
    """|l_even| + |l_odd| + ||H||_S1 (truncation + declared tail).

    Dominates the complete Schur multiplier norm of x, y -> phi(d(x, y)) on
    the free-group tree.
    """
    diff2 = difference(phi, 2)
    if diff_tail is not None:
        diff2 = DiscreteSymbol(eval=diff2.eval, tail=diff_tail, description=diff2.description)
    if isinstance(diff2.tail, UnknownTail):
        raise ValueError("step-2 difference needs a certified tail model")
    if truncation is None:
        truncation = required_truncation(diff2, tail_tol)
    l_even, l_odd, _rem = _parity_limits(phi, diff2)
    s1 = schatten1(build_hankel(diff2, truncation))
    tail = antidiag_tail_sum(diff2, truncation)
    return abs(l_even) + abs(l_odd) + s1 + tail


def _operator_norm_power(m: np.ndarray, rng: np.random.Generator, rel_tol: float = 1e-6) -> float:
    """Largest singular value by power iteration on M* M."""
    n = m.shape[1]
    v = rng.standard_normal(n)
    if np.iscomplexobj(m):
        v = v + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    sigma = 0.0
    for _ in range(10000):
        w = m @ v
        u = m.conj().T @ w
        nu = np.linalg.norm(u)
        if nu == 0.0:
            return 0.0
        new_sigma = math.sqrt(float(np.real(np.vdot(v, u))))
        v = u / nu
        if sigma > 0 and abs(new_sigma - sigma) <= rel_tol * sigma:
            return new_sigma
        sigma = new_sigma
    return sigma


def empirical_multiplier_lower(
    phi: DiscreteSymbol,
    ball_radius: int = 3,
    trials: int = 10,
    seed: int = 0,
    n_gens: int = 2,
) -> float:
    """max over random M of ||S o M||_op / ||M||_op on a ball, S = phi(d).

    A certified lower bound on the Schur multiplier norm over the ball, hence
    on the completely bounded radial multiplier norm.  Deterministic per seed.
    """
    if ball_radius > 6:
        raise ValueError("ball_radius capped at 6 (ball size grows 4 * 3^(r-1))")
    words = ball(ball_radius, n_gens)
    n = len(words)
    dmat = np.zeros((n, n), dtype=int)
    for i, x in enumerate(words):
        for j in range(i + 1, n):
            d = tree_distance(x, words[j])
            dmat[i, j] = d
            dmat[j, i] = d
    dmax = int(dmat.max())
    phi_vals = np.asarray([complex(phi.eval(d)) for d in range(dmax + 1)])
    smat = phi_vals[dmat]
    if np.all(smat.imag == 0.0):
        smat = smat.real
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed))
    best = 0.0
    for _ in range(trials):
        m = rng.standard_normal((n, n))
        # exact norm downstairs, Rayleigh-quotient (hence lower) estimate
        # upstairs: the ratio never overshoots the true multiplier norm
        denom = float(np.linalg.norm(m, 2))
        if denom == 0.0:
            continue
        num = _operator_norm_power(smat * m, rng)
        best = max(best, num / denom)
    return best


def parity_coherence(words: Iterable[Word]) -> bool:
    """(-1)^{d(x,y)} == (-1)^{|x|} (-1)^{|y|} over all pairs; tree parity law."""
    ws = list(words)
    for i, x in enumerate(ws):
        for y in ws[i:]:
            if (-1) ** tree_distance(x, y) != (-1) ** (len(x) + len(y)):
                return False
    return True
