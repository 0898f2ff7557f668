"""Tanh-sinh rules with endpoint power absorption and result records."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from ..core import DomainError

TS_RANGE = 3.5
H_START = 1.0 / 4
H_MIN = 1.0 / 256


@dataclass(frozen=True)
class QuadResult:
    """Numerical integral with its error estimate.

    For Monte Carlo ``error_estimate`` is the standard error of the mean.
    """

    value: complex | float
    error_estimate: float
    evaluations: int
    method: str
    seed: int | None = None
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if not self.error_estimate >= 0:
            raise ValueError("error_estimate must be non-negative")

    def to_dict(self) -> dict:
        value = complex(self.value)
        out = {
            "value": value.real if value.imag == 0 else [value.real, value.imag],
            "error_estimate": self.error_estimate,
            "evaluations": self.evaluations,
            "method": self.method,
            "seed": self.seed,
        }
        out.update(self.extra)
        return out


@lru_cache(maxsize=32)
def tanh_sinh(h: float, span: float = TS_RANGE) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nodes ``x`` on (0,1), their complements ``1-x`` and weights.

    Complements are computed directly so that ``1-x`` keeps full relative
    precision near the right endpoint.
    """
    u = np.arange(-span, span + h / 2, h)
    s = np.pi / 2 * np.sinh(u)
    x = 1.0 / (1.0 + np.exp(-2.0 * s))
    xc = 1.0 / (1.0 + np.exp(2.0 * s))
    w = h * np.pi * np.cosh(u) * x * xc
    keep = (x > 0) & (xc > 0)
    out = (x[keep], xc[keep], w[keep])
    for arr in out:
        arr.setflags(write=False)
    return out


def axis_rule(p0: float, p1: float, h: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Rule on (0,1) whose weights include ``x^p0 (1-x)^p1``.

    Each half is mapped by ``x = y^(1/(p+1)) / 2`` so the endpoint power
    becomes a constant Jacobian; requires ``p0, p1 > -1``.
    """
    if p0 <= -1 or p1 <= -1:
        raise DomainError(f"endpoint exponents must exceed -1, got {p0}, {p1}")
    y, _, w = tanh_sinh(h)
    k0 = 1.0 / (p0 + 1.0)
    xl = 0.5 * y**k0
    wl = w * 0.5 ** (p0 + 1.0) * k0 * (1.0 - xl) ** p1
    k1 = 1.0 / (p1 + 1.0)
    xr_c = 0.5 * y**k1
    wr = w * 0.5 ** (p1 + 1.0) * k1 * (1.0 - xr_c) ** p0
    x = np.concatenate([xl, 1.0 - xr_c])
    xc = np.concatenate([1.0 - xl, xr_c])
    return x, xc, np.concatenate([wl, wr])


def interval_rule(lo: float, hi: float, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Plain tanh-sinh nodes and weights on ``(lo, hi)``."""
    x, _, w = tanh_sinh(h)
    return lo + (hi - lo) * x, (hi - lo) * w


def refine(estimate: Callable[[float], tuple[complex, int]], tol: float, rel: bool = True,
           h0: float = H_START, h_min: float = H_MIN) -> tuple[complex, float, int]:
    """Halve the step until two successive estimates agree to ``tol``.

    Returns the finest value, the last difference as the error estimate and
    the total number of integrand evaluations.
    """
    h = h0
    prev, evals = estimate(h)
    while True:
        h /= 2
        cur, n = estimate(h)
        evals += n
        err = abs(cur - prev)
        scale = max(abs(cur), 1e-300) if rel else 1.0
        if err <= tol * scale or h <= h_min:
            return cur, err, evals
        prev = cur


def integrate_endpoint(f: Callable[[np.ndarray, np.ndarray], np.ndarray], p0: float, p1: float,
                       tol: float = 1e-12) -> QuadResult:
    """Integrate ``x^p0 (1-x)^p1 f(x, 1-x)`` over (0,1)."""

    def est(h):
        x, xc, w = axis_rule(p0, p1, h)
        return complex(np.sum(w * f(x, xc))), x.size

    value, err, evals = refine(est, tol)
    return QuadResult(_real_if_close(value), err, evals, "tanh-sinh")


def integrate_box(f: Callable[..., np.ndarray], exponents: Sequence[tuple[float, float]],
                  tol: float = 1e-10) -> QuadResult:
    """Tensor-product rule on the unit square or cube.

    ``exponents[k] = (p0, p1)`` are the endpoint powers of axis ``k`` that are
    absorbed into the weights; ``f`` receives each axis as ``(x, 1-x)`` pairs
    broadcast against each other and returns the remaining factor.
    """
    dim = len(exponents)

    def est(h):
        rules = [axis_rule(p0, p1, h) for p0, p1 in exponents]
        args = []
        weight = np.ones([1] * dim)
        for k, (x, xc, w) in enumerate(rules):
            shape = [1] * dim
            shape[k] = x.size
            args.append((x.reshape(shape), xc.reshape(shape)))
            weight = weight * w.reshape(shape)
        vals = f(*args)
        return complex(np.sum(weight * vals)), int(np.prod([r[0].size for r in rules]))

    value, err, evals = refine(est, tol, h_min=1.0 / 128)
    return QuadResult(_real_if_close(value), err, evals, "tanh-sinh")


def _real_if_close(z: complex) -> complex | float:
    return z.real if abs(z.imag) <= 1e-14 * max(abs(z.real), 1e-300) else z
