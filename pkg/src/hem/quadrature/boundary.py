"""Boundary integrals of the fusion-leading power near the real line.

All three integrands are homogeneous in the insertion positions, so the
radial integral is done in closed form and only a one-dimensional profile
is left for quadrature:

* ``half_disc_Re_w2``: ``int |w|^(-g alpha) |w - conj w|^(-g^2/2) Re(w^-2)`` over
  the upper half disc, with angular profile ``(2 sin th)^(-g^2/2) cos 2th``.
* ``I11_opposite``: one point on ``(-1, 0)``, one on ``(0, 1)``, weight
  ``|x1 x2|^(-g alpha/2 - 1) |x1 - x2|^(-g^2/2)``.
* ``I11_same_side``: both points on ``(0, 1)``; a Selberg integral.
"""

from __future__ import annotations

import math

import numpy as np

from ..closedform import SelbergArgs
from ..core import DomainError, Params, alpha21
from .rules import QuadResult, integrate_endpoint
from .selberg import quad_selberg22

BOUNDARY_INTEGRALS = ("I11_same_side", "I11_opposite", "half_disc_Re_w2")


def radial_factor(alpha: float, params: Params) -> float:
    """``int_0^1 r^(-g alpha - g^2/2 - 1) dr``, which equals ``-1/(g (alpha - alpha21))``."""
    g = params.gamma
    return 1.0 / (-g * alpha - g * g / 2)


def half_disc_profile(params: Params, tol: float = 1e-13) -> QuadResult:
    """``int_0^pi (2 sin th)^(-g^2/2) cos(2 th) dth``."""
    p = -params.gamma**2 / 2
    if p <= -1:
        raise DomainError("angular profile diverges for gamma >= sqrt(2)")

    def rest(x, xc):
        near = np.minimum(x, xc)
        smooth = 2 * np.sin(np.pi * near) / (x * xc)
        return math.pi * smooth**p * np.cos(2 * np.pi * x)

    return integrate_endpoint(rest, p, p, tol)


def opposite_profile(alpha: float, params: Params, tol: float = 1e-13) -> QuadResult:
    """``int_0^1 t^(-g alpha/2 - 1) (1 + t)^(-g^2/2) dt``."""
    g = params.gamma
    return integrate_endpoint(lambda x, xc: (1 + x) ** (-g * g / 2), -g * alpha / 2 - 1, 0.0, tol)


def quad_boundary(integral_id: str, alpha: float, params: Params, tol: float = 1e-10) -> QuadResult:
    """Evaluate one of the boundary integrals for ``alpha < alpha21``."""
    if integral_id not in BOUNDARY_INTEGRALS:
        raise DomainError(f"unknown boundary integral {integral_id!r}; expected one of {BOUNDARY_INTEGRALS}")
    if not alpha < alpha21(params):
        raise DomainError(f"{integral_id} converges only for alpha < alpha21 = {alpha21(params)}, got {alpha}")
    g = params.gamma
    extra = {"integral": integral_id, "alpha": alpha}
    if integral_id == "I11_same_side":
        res = quad_selberg22(SelbergArgs(-g * alpha / 2, 1.0, -g * g / 4), tol)
        return QuadResult(res.value, res.error_estimate, res.evaluations, res.method, extra=extra)
    if integral_id == "half_disc_Re_w2":
        scale = radial_factor(alpha, params)
        prof = half_disc_profile(params, min(tol, 1e-13))
    else:
        scale = 2 * radial_factor(alpha, params)
        prof = opposite_profile(alpha, params, min(tol, 1e-13))
    extra["profile"] = prof.value
    return QuadResult(scale * prof.value, abs(scale) * prof.error_estimate, prof.evaluations, prof.method,
                      extra=extra)
