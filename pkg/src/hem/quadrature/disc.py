"""Two-point integrals over the unit disc with a log-gas weight.

Each integral has the form

    int_{D^2} |w1 w2|^(-g alpha) |w1 - w2|^(-g^2) (conj(d)/d)^m
              w1^(-a1) conj(w1)^(-b1) w2^(-a2) conj(w2)^(-b2) |dw1|^2 |dw2|^2

with ``d = w2 - w1``.  Rotation invariance removes one angle, and scaling the
smaller radius against the larger one factors out the radial integral

    int_0^R r^(-2 g alpha - g^2 - 1) dr = R^(-2 g alpha - g^2) / (-2 g alpha - g^2),

which carries the pole at ``alpha21``.  What is left is

    M(alpha) = int_0^1 t^(p2) K(1, t) dt + int_0^1 t^(p1) K(t, 1) dt,
    K(r1, r2) = int_0^{2 pi} |r2 e^{i th} - r1|^(-g^2) e^{i (b2-a2) th} (conj(d)/d)^m dth,

with ``p_j = -g alpha - a_j - b_j + 1``.  For ``t <= 1/2`` the angular kernel
is summed as a binomial series and integrated exactly; on ``[1/2, 1]`` both
the angle and ``t`` are integrated with tanh-sinh rules, the angle split near
the coincidence point ``th = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core import DomainError, Params, alpha21
from .rules import QuadResult, refine, tanh_sinh

SERIES_SPLIT = 0.5
SERIES_TERMS = 80


@dataclass(frozen=True)
class DiscIntegral:
    """Exponents ``(a1, b1, a2, b2)`` of the two insertions and the diagonal phase power ``m``."""

    name: str
    a1: int
    b1: int
    a2: int
    b2: int
    m: int

    @property
    def charge(self) -> int:
        """Rotation charge; the integral vanishes identically unless it is zero."""
        return (self.a1 - self.b1) + (self.a2 - self.b2) + 2 * self.m


DISC_INTEGRALS = {
    "J1": DiscIntegral("J1", 1, 1, 1, 1, 0),
    "J2": DiscIntegral("J2", 1, 2, 0, 1, 1),
    "J3": DiscIntegral("J3", 1, 1, 0, 2, 1),
    # the J2 weight without the diagonal phase factor
    "I2_10_21-analog": DiscIntegral("I2_10_21-analog", 1, 2, 0, 1, 0),
}


def disc_integral(name: str) -> DiscIntegral:
    try:
        return DISC_INTEGRALS[name]
    except KeyError as exc:
        raise DomainError(f"unknown disc integral {name!r}; expected one of {sorted(DISC_INTEGRALS)}") from exc


def _binomial_coeffs(A: float, n: int) -> np.ndarray:
    """``(A)_j / j!`` for ``j = 0..n-1``."""
    out = np.empty(n)
    out[0] = 1.0
    for j in range(1, n):
        out[j] = out[j - 1] * (A + j - 1) / j
    return out


def _series(spec: DiscIntegral, gamma: float, inner: bool) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients and exponents of ``K/(2 pi)`` as a power series in ``t``.

    ``inner`` selects ``K(t, 1)``; otherwise ``K(1, t)``.
    """
    A2 = gamma**2 / 2 + spec.m
    A1 = gamma**2 / 2 - spec.m
    n_terms = SERIES_TERMS
    c1 = _binomial_coeffs(A1, n_terms + 8)
    c2 = _binomial_coeffs(A2, n_terms)
    shift = (spec.b2 - spec.a2 - 2 * spec.m) if inner else -(spec.b2 - spec.a2)
    coefs, powers = [], []
    for j in range(n_terms):
        l = j - shift
        if 0 <= l < c1.size:
            coefs.append(c2[j] * c1[l])
            powers.append(2 * j - shift)
    return np.array(coefs), np.array(powers, dtype=float)


def _kernel(spec: DiscIntegral, gamma: float, t: np.ndarray, tc: np.ndarray, inner: bool, h: float) -> np.ndarray:
    """Angular kernel at radii ratios ``t`` in ``[1/2, 1)`` by tanh-sinh in the angle."""
    t = t[:, None]
    tc = tc[:, None]
    total = np.zeros(t.shape[0])
    delta = np.minimum(np.pi / 2, 4.0 * tc[:, 0])
    x, _, w = tanh_sinh(h)
    for lo, hi in ((np.zeros_like(delta), delta), (delta, np.full_like(delta, np.pi))):
        th = lo[:, None] + (hi - lo)[:, None] * x[None, :]
        wt = (hi - lo)[:, None] * w[None, :]
        half = np.sin(th / 2) ** 2
        if inner:
            # d = e^{i th} - t
            re = tc - 2 * half
        else:
            # d = t e^{i th} - 1
            re = -tc - 2 * t * half
        im = (1.0 if inner else t) * np.sin(th)
        mod2 = re * re + im * im
        phase = np.exp(1j * (spec.b2 - spec.a2) * th)
        if spec.m:
            arg = np.arctan2(im, re)
            phase = phase * np.exp(-2j * spec.m * arg)
        vals = mod2 ** (-gamma**2 / 2) * phase.real
        total += np.sum(wt * vals, axis=1)
    return 2.0 * total


def _radial_part(spec: DiscIntegral, gamma: float, p: float, inner: bool, h: float) -> tuple[float, int]:
    coefs, powers = _series(spec, gamma, inner)
    expo = p + powers + 1.0
    if np.any(expo <= 0):
        raise DomainError("disc integral diverges at the origin for this alpha")
    series = 2 * np.pi * float(np.sum(coefs * SERIES_SPLIT**expo / expo))
    x, xc, w = tanh_sinh(h)
    t = SERIES_SPLIT + (1 - SERIES_SPLIT) * x
    tc = (1 - SERIES_SPLIT) * xc
    wt = (1 - SERIES_SPLIT) * w
    kern = _kernel(spec, gamma, t, tc, inner, h)
    return series + float(np.sum(wt * t**p * kern)), t.size * 2 * x.size


def reduced_integral(spec: DiscIntegral, alpha: float, params: Params, tol: float = 1e-10) -> QuadResult:
    """The angular-radial factor ``M(alpha)`` of a disc integral."""
    g = params.gamma
    if spec.charge != 0:
        return QuadResult(0.0, 0.0, 0, "exact-zero", extra={"reason": "nonzero rotation charge"})
    if not g * g < 2:
        raise DomainError("the angular kernel is not integrable at coincidence for gamma >= sqrt(2)")
    p1 = -g * alpha - spec.a1 - spec.b1 + 1
    p2 = -g * alpha - spec.a2 - spec.b2 + 1

    def est(h):
        outer, n1 = _radial_part(spec, g, p2, False, h)
        inner, n2 = _radial_part(spec, g, p1, True, h)
        return outer + inner, n1 + n2

    value, err, evals = refine(est, tol, h0=1.0 / 8, h_min=1.0 / 128)
    return QuadResult(value.real, err, evals, "tanh-sinh")


def radial_prefactor(alpha: float, params: Params, radius: float = 1.0) -> float:
    g = params.gamma
    expo = -2 * g * alpha - g * g
    return 2 * np.pi * radius**expo / expo


def quad_disc(name: str, alpha: float, params: Params, tol: float = 1e-9, radius: float = 1.0) -> QuadResult:
    """Evaluate one of the disc integrals over the disc of the given radius."""
    spec = disc_integral(name)
    if not alpha < alpha21(params):
        raise DomainError(f"{name} converges only for alpha < alpha21 = {alpha21(params)}, got {alpha}")
    m = reduced_integral(spec, alpha, params, tol)
    pref = radial_prefactor(alpha, params, radius)
    return QuadResult(pref * m.value, abs(pref) * m.error_estimate, m.evaluations, m.method,
                      extra={"integral": name, "alpha": alpha, "reduced": m.value})


def quad_J1(alpha: float, params: Params, tol: float = 1e-9, radius: float = 1.0) -> QuadResult:
    """Integral of ``|w1 w2|^(-g alpha - 2) |w1 - w2|^(-g^2)`` over the disc squared."""
    return quad_disc("J1", alpha, params, tol, radius)


def residue_from_reduction(name: str, params: Params, tol: float = 1e-10) -> QuadResult:
    """Residue at alpha21 read off directly from ``M(alpha21)``."""
    spec = disc_integral(name)
    m = reduced_integral(spec, alpha21(params), params, tol)
    factor = 2 * math.pi / (-2 * params.gamma)
    return QuadResult(factor * m.value, abs(factor) * m.error_estimate, m.evaluations, m.method)
