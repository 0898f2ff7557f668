"""Importance-sampled Monte Carlo for the complex two-point Selberg integral.

The target is

    int_{C^2} |w1 w2|^(2a-2) |(1-w1)(1-w2)|^(2b-2) |w1-w2|^(4c) |dw1|^2 |dw2|^2.

Each point is drawn from a mixture of power-law densities centred at 0, at 1
and at infinity; with probability ``DIAG_WEIGHT`` the second point is instead
placed near the first with a power-law law in ``w2 - w1``.  The proposal is
symmetrized in the two points.  Power exponents are chosen in the middle of
the window where the estimator has finite variance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..closedform import SelbergArgs
from ..core import DomainError
from .rules import QuadResult

BATCH = 1_000_000
MIX_WEIGHTS = np.array([0.4, 0.3, 0.3])
DIAG_WEIGHT = 0.3
DEFAULT_SEED = 20240601


@dataclass(frozen=True)
class Proposal:
    """Power-law exponents of the proposal: near 0, near 1, at infinity and on the diagonal."""

    p0: float
    p1: float
    tail: float
    diag: float
    finite_variance: bool


def _real(args: SelbergArgs) -> tuple[float, float, float]:
    vals = [complex(v) for v in args]
    if any(v.imag != 0 for v in vals):
        raise DomainError("Monte Carlo takes real exponents")
    return vals[0].real, vals[1].real, vals[2].real


def complex_convergent(args: SelbergArgs) -> bool:
    """Absolute convergence of the complex integral at 0, 1, infinity and the diagonal."""
    a, b, c = _real(args)
    return (a > 0 and b > 0 and a + c > 0 and b + c > 0 and c > -0.5
            and a + b + 2 * c < 1 and a + b + c < 1)


def _window(lo: float, hi: float) -> tuple[float, bool]:
    if lo < hi:
        return 0.5 * (lo + hi), True
    return hi - 1e-3 if lo >= hi else lo, False


def choose_proposal(args: SelbergArgs) -> Proposal:
    """Exponents for which ``f^2/q`` is integrable when such exponents exist."""
    a, b, c = _real(args)
    diag, ok_d = _window(max(0.0, -4 * c), 2.0)
    ok_d = ok_d and 8 * c + diag > -2
    # decay rates of the weight: one point at 0, both at 0, one at infinity, both at infinity
    e0, e1 = 2 - 2 * a, 2 - 2 * b
    h1, h2 = 4 - 2 * a - 2 * b - 4 * c, 8 - 4 * a - 4 * b - 4 * c
    p0, ok0 = _window(max(0.0, 2 * e0 - 2, 2 * e0 - 4 * c - 2, 4 * e0 - 8 * c - diag - 4), 2.0)
    p1, ok1 = _window(max(0.0, 2 * e1 - 2, 2 * e1 - 4 * c - 2, 4 * e1 - 8 * c - diag - 4), 2.0)
    hi_tail = min(2 * h1 - 2, h2 - 2, 14 - 8 * a - 8 * b)
    if hi_tail > 2:
        tail, ok_t = 0.5 * (2 + min(hi_tail, 6.0)), True
    else:
        tail, ok_t = 2.0 + 1e-3, False
    return Proposal(p0, p1, tail, diag, ok0 and ok1 and ok_t and ok_d)


def _disc(rng: np.random.Generator, n: int, p: float) -> np.ndarray:
    r = (1 - rng.random(n)) ** (1 / (2 - p))
    return r * np.exp(2j * np.pi * rng.random(n))


def _tail(rng: np.random.Generator, n: int, s: float) -> np.ndarray:
    r = (1 - rng.random(n)) ** (-1 / (s - 2))
    return r * np.exp(2j * np.pi * rng.random(n))


def _disc_density(d: np.ndarray, p: float) -> np.ndarray:
    return np.where(d < 1, (2 - p) / (2 * np.pi) * d ** (-p), 0.0)


def _tail_density(d: np.ndarray, s: float) -> np.ndarray:
    return np.where(d >= 1, (s - 2) / (2 * np.pi) * d ** (-s), 0.0)


def _single(rng: np.random.Generator, n: int, prop: Proposal) -> np.ndarray:
    comp = rng.choice(3, size=n, p=MIX_WEIGHTS)
    w = np.empty(n, complex)
    for k, draw in enumerate((lambda m: _disc(rng, m, prop.p0),
                              lambda m: 1 + _disc(rng, m, prop.p1),
                              lambda m: _tail(rng, m, prop.tail))):
        idx = comp == k
        w[idx] = draw(int(idx.sum()))
    return w


def _single_density(w: np.ndarray, prop: Proposal) -> np.ndarray:
    return (MIX_WEIGHTS[0] * _disc_density(np.abs(w), prop.p0)
            + MIX_WEIGHTS[1] * _disc_density(np.abs(1 - w), prop.p1)
            + MIX_WEIGHTS[2] * _tail_density(np.abs(w), prop.tail))


def _batch(rng: np.random.Generator, n: int, args: tuple[float, float, float], prop: Proposal) -> np.ndarray:
    a, b, c = args
    w1 = _single(rng, n, prop)
    w2 = _single(rng, n, prop)
    near = rng.random(n) < DIAG_WEIGHT
    offset = _disc(rng, int(near.sum()), prop.diag)
    w2[near] = w1[near] + offset
    # keep the drawn separation: w1 + offset - w1 can round to zero far out
    dist = np.abs(w2 - w1)
    dist[near] = np.abs(offset)
    swap = rng.random(n) < 0.5
    w1, w2 = np.where(swap, w2, w1), np.where(swap, w1, w2)
    q1, q2 = _single_density(w1, prop), _single_density(w2, prop)
    dd = _disc_density(dist, prop.diag)
    q = 0.5 * (q1 * ((1 - DIAG_WEIGHT) * q2 + DIAG_WEIGHT * dd) + q2 * ((1 - DIAG_WEIGHT) * q1 + DIAG_WEIGHT * dd))
    f = (np.abs(w1 * w2) ** (2 * a - 2) * np.abs((1 - w1) * (1 - w2)) ** (2 * b - 2)
         * dist ** (4 * c))
    return f / q


def mc_dotsenko_fateev(args: SelbergArgs, samples: int = 10_000_000, seed: int = DEFAULT_SEED) -> QuadResult:
    """Monte Carlo estimate with standard error of the complex Selberg integral."""
    if not complex_convergent(args):
        raise DomainError(f"{args} is outside the absolute-convergence region of the complex integral")
    if samples < 2:
        raise DomainError("need at least two samples")
    real = _real(args)
    prop = choose_proposal(args)
    sizes = [BATCH] * (samples // BATCH) + ([samples % BATCH] if samples % BATCH else [])
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    sums = np.empty(len(sizes))
    squares = np.empty(len(sizes))
    for i, (n, child) in enumerate(zip(sizes, children)):
        x = _batch(np.random.Generator(np.random.Philox(child)), n, real, prop)
        sums[i] = np.sum(x)
        squares[i] = np.sum(x * x)
    mean = np.sum(sums) / samples
    var = max(np.sum(squares) / samples - mean * mean, 0.0) * samples / (samples - 1)
    se = float(np.sqrt(var / samples))
    return QuadResult(float(mean), se, samples, "monte-carlo", seed=seed,
                      extra={"proposal": prop.__dict__, "batches": len(sizes)})
