"""Pole-fit extrapolation of residues and a numerical regularity probe."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..closedform import residue_J1
from ..core import DomainError, Params, alpha21, phase, Phase, PhaseError
from .disc import quad_disc

DEFAULT_OFFSETS = tuple(0.2 * 2.0**-k for k in range(7))
FIT_WARN = 1e-3
PROBE_SLOPE = 0.9
PROBE_IDS = ("J1", "J2", "J3", "J2+J3", "I2_10_21-analog")


@dataclass(frozen=True)
class ResidueFit:
    """Fit of ``f(pole - d) = -R/d + C + D d``; ``residue`` is ``R`` so that ``f ~ R/(alpha - pole)``."""

    pole_location: float
    residue: complex
    finite_part: complex
    slope: complex
    fit_residual: float
    sample_offsets: tuple[float, ...]
    warning: str | None = None

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("residue", "finite_part", "slope"):
            z = complex(out[key])
            out[key] = z.real if z.imag == 0 else [z.real, z.imag]
        out["sample_offsets"] = list(self.sample_offsets)
        return out


def _scalar(z: complex) -> complex | float:
    z = complex(z)
    return z.real if z.imag == 0 else z


def residue_extrapolate(f: Callable[[float], complex], pole: float,
                        offsets: Sequence[float] = DEFAULT_OFFSETS) -> ResidueFit:
    """Least-squares three-term pole fit from samples on the convergent side ``alpha < pole``.

    The model is fitted in the form ``d f(pole - d) = -R + C d + D d^2`` so all
    samples carry comparable weight.
    """
    d = np.asarray(offsets, dtype=float)
    if d.size < 3:
        raise DomainError("at least three offsets are needed for a three-term fit")
    if np.any(d <= 0) or np.any(np.diff(d) >= 0):
        raise DomainError("offsets must be positive and strictly decreasing")
    vals = np.array([complex(f(pole - x)) for x in d])
    design = np.stack([-np.ones_like(d), d, d * d], axis=1)
    target = d * vals
    coef, *_ = np.linalg.lstsq(design.astype(complex), target, rcond=None)
    resid = target - design @ coef
    scale = max(float(np.max(np.abs(target))), 1e-300)
    fit_residual = float(np.sqrt(np.mean(np.abs(resid) ** 2)) / scale) if d.size > 3 else 0.0
    warning = None
    if fit_residual > FIT_WARN:
        warning = f"ill-conditioned fit: relative residual {fit_residual:.2e} exceeds {FIT_WARN:.0e}"
    return ResidueFit(pole, _scalar(coef[0]), _scalar(coef[1]), _scalar(coef[2]), fit_residual,
                      tuple(float(x) for x in d), warning)


@dataclass
class ProbeReport:
    """Products ``(alpha - alpha21) f(alpha)`` on a geometric offset grid and their log-log trend."""

    integral_id: str
    gamma: float
    offsets: list[float]
    products: list[float]
    slope: float
    slope_stderr: float
    limit: float
    regular: bool
    reference_residue: float | None = None
    limit_rel_error: float | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def _probe_value(integral_id: str, alpha: float, params: Params, tol: float) -> float:
    if integral_id == "J2+J3":
        return quad_disc("J2", alpha, params, tol).value + quad_disc("J3", alpha, params, tol).value
    return quad_disc(integral_id, alpha, params, tol).value


def regularity_probe(integral_id: str, params: Params, window: float = 0.2, levels: int = 7,
                     tol: float = 1e-10) -> ProbeReport:
    """Test numerically whether ``integral_id`` has a pole at ``alpha21``.

    A regular function gives products vanishing linearly in the offset, so the
    log-log slope is near 1; a simple pole gives a slope near 0 and a nonzero
    limit, which is extrapolated linearly in the offset.
    """
    if integral_id not in PROBE_IDS:
        raise DomainError(f"unknown probe target {integral_id!r}; expected one of {PROBE_IDS}")
    if phase(params) is not Phase.SUBCRITICAL:
        raise PhaseError("the regularity probe needs gamma < sqrt(2)")
    pole = alpha21(params)
    d = window * 2.0 ** -np.arange(levels)
    prods = np.array([-x * _probe_value(integral_id, pole - x, params, tol) for x in d])
    mags = np.abs(prods)
    if np.all(mags == 0):
        slope, stderr = math.inf, 0.0
    else:
        fit = np.polyfit(np.log(d), np.log(np.maximum(mags, 1e-300)), 1, cov=True)
        slope, stderr = float(fit[0][0]), float(math.sqrt(max(fit[1][0, 0], 0.0)))
    limit = float(np.polyfit(d[-3:], prods[-3:], 1)[1])
    report = ProbeReport(integral_id, params.gamma, d.tolist(), prods.tolist(), slope, stderr, limit,
                         bool(slope >= PROBE_SLOPE))
    if integral_id == "J1":
        ref = float(residue_J1(params).real)
        report.reference_residue = ref
        report.limit_rel_error = abs(limit - ref) / abs(ref)
    return report
