"""Closed forms for Selberg and complex Dotsenko-Fateev integrals, Kac-point
residues, the four level-2 HEM constants and the FZZ conic section.

Meromorphic functions are represented as products of Gamma and sine factors
with affine arguments ``x0 + lam * s``.  Evaluating such a product at
``s = 0`` tracks the order of every pole or zero exactly, which gives residues
and finite parts without numerical differencing.
"""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Iterable, Sequence

import numpy as np
from scipy import special

from .core import (
    Params,
    Phase,
    PhaseError,
    PoleError,
    UnsupportedOrderError,
    UsageError,
    alpha12,
    alpha21,
    phase,
)

INT_TOL = 1e-12
TOL_CONIC = 1e-10


def _integer_index(x: complex, nonpositive: bool = False) -> int | None:
    """Return the integer ``x`` sits on (within ``INT_TOL``), else None."""
    x = complex(x)
    k = round(x.real)
    if abs(x - k) > INT_TOL * max(1.0, abs(x)):
        return None
    if nonpositive and k > 0:
        return None
    return int(k)


def gamma_fn(z: complex) -> complex:
    """Gamma function; raises PoleError at nonpositive integers."""
    k = _integer_index(z, nonpositive=True)
    if k is not None:
        raise PoleError(f"Gamma has a pole at z = {k}")
    z = complex(z)
    if z.imag == 0.0 and abs(z.real) < 170.0:
        return complex(special.gamma(z.real))
    return complex(np.exp(special.loggamma(z)))


def log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma, continuous off the negative real axis."""
    k = _integer_index(z, nonpositive=True)
    if k is not None:
        raise PoleError(f"log Gamma has a pole at z = {k}")
    return complex(special.loggamma(complex(z)))


# ---------------------------------------------------------------------------
# meromorphic products


@dataclass(frozen=True)
class Factor:
    """One factor ``f(pi-scaled x)`` raised to ``power`` with ``x = x0 + lam*s``."""

    kind: str  # "gamma" | "sin" | "cos"
    x0: complex
    lam: complex = 0.0
    power: int = 1


@dataclass(frozen=True)
class MeroSample:
    """Value of a meromorphic function at a point, or its residue at a pole.

    ``order`` is the pole order (positive), zero for a regular nonzero point
    and negative at a zero.  At a simple pole ``value`` holds the finite part.
    """

    point: Any
    value: complex
    residue: complex | None = None
    pole_flag: bool = False
    order: int = 0

    def __post_init__(self) -> None:
        if self.pole_flag != (self.residue is not None):
            raise ValueError("residue must be present exactly when pole_flag is set")


def _leading(f: Factor) -> tuple[int, complex, complex]:
    """Order, log of the leading coefficient and log-derivative at s = 0."""
    kind, x0, lam = f.kind, complex(f.x0), complex(f.lam)
    if kind == "cos":
        kind, x0 = "sin", x0 + 0.5
    if kind == "gamma":
        k = _integer_index(x0, nonpositive=True)
        if k is None:
            return 0, log_gamma(x0), lam * complex(special.digamma(x0))
        if lam == 0:
            raise PoleError(f"Gamma factor sits at its pole {-k} and does not move along the direction")
        # s*Gamma(-k + lam*s) -> (-1)^k / (k! lam)
        lead = cmath.log((-1) ** (-k) / (math.factorial(-k) * lam))
        return -1, lead, lam * complex(special.digamma(1 - k))
    if kind == "sin":
        k = _integer_index(x0)
        if k is None:
            val = cmath.sin(math.pi * x0)
            return 0, cmath.log(val), lam * math.pi * cmath.cos(math.pi * x0) / val
        if lam == 0:
            return 10**6, 0j, 0j  # identically zero along the direction
        # sin(pi(k + lam s)) / s -> (-1)^k pi lam; the quotient is even in s
        return 1, cmath.log((-1) ** k * math.pi * lam), 0j
    raise ValueError(f"unknown factor kind {f.kind!r}")


def evaluate_product(factors: Sequence[Factor], point: Any = None, constant: complex = 1.0) -> MeroSample:
    """Evaluate ``constant * prod factors`` at ``s = 0`` with exact order bookkeeping."""
    order = 0
    log_lead = cmath.log(constant) if constant != 0 else None
    dlog = 0j
    if log_lead is None:
        return MeroSample(point, 0j, order=-(10**6))
    for f in factors:
        o, lead, dl = _leading(f)
        order -= f.power * o  # zeros of a factor lower the pole order
        log_lead += f.power * lead
        dlog += f.power * dl
    if order >= 10**5:
        raise PoleError(f"a sine in the denominator vanishes identically at {point}")
    if order >= 2:
        raise UnsupportedOrderError(f"pole of order {order} at {point}")
    lead = cmath.exp(log_lead)
    if order == 1:
        return MeroSample(point, lead * dlog, residue=lead, pole_flag=True, order=1)
    if order < 0:
        return MeroSample(point, 0j, order=order)
    return MeroSample(point, lead, order=0)


# ---------------------------------------------------------------------------
# Selberg and Dotsenko-Fateev integrals


@dataclass(frozen=True)
class SelbergArgs:
    """Exponent parameters ``(a, b, c)`` of the two-dimensional Selberg integral."""

    a: complex
    b: complex
    c: complex

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def converges22(self) -> bool:
        a, b, c = (complex(v).real for v in self)
        return a > 0 and b > 0 and c > -min(0.5, a, b)

    def converges21(self) -> bool:
        a, b, c = (complex(v).real for v in self)
        # b > 0 and b + c > 0 are also needed near t1 = t2 = 1
        return a > 0 and b > 0 and b + c > 0 and a + b + 2 * c < 1 and c > -0.5


Direction = Sequence[complex] | None


def _linear(args: SelbergArgs, direction: Direction, coeffs: tuple[float, float, float], shift: float = 0.0):
    """Affine argument ``shift + coeffs . args`` and its rate along ``direction``."""
    x0 = shift + sum(k * complex(v) for k, v in zip(coeffs, args))
    if direction is None:
        return x0, None
    lam = sum(k * complex(d) for k, d in zip(coeffs, direction))
    return x0, lam


def _factor(kind: str, args: SelbergArgs, direction: Direction, coeffs, shift=0.0, power=1) -> Factor:
    x0, lam = _linear(args, direction, coeffs, shift)
    if lam is None:
        # default: differentiate with respect to the offending argument itself
        at_singular = (
            _integer_index(x0, nonpositive=True) is not None
            if kind == "gamma"
            else _integer_index(x0 + (0.5 if kind == "cos" else 0.0)) is not None
        )
        lam = 1.0 if at_singular else 0.0
    return Factor(kind, x0, lam, power)


def _selberg22_factors(args: SelbergArgs, direction: Direction) -> list[Factor]:
    g = lambda coeffs, shift=0.0, power=1: _factor("gamma", args, direction, coeffs, shift, power)  # noqa: E731
    return [
        g((1, 0, 0)),
        g((0, 1, 0)),
        g((1, 0, 1)),
        g((0, 1, 1)),
        g((0, 0, 2), 1.0),
        g((1, 1, 1), power=-1),
        g((1, 1, 2), power=-1),
        g((0, 0, 1), 1.0, power=-1),
    ]


def _selberg_sines(args: SelbergArgs, direction: Direction) -> list[Factor]:
    s = lambda coeffs, shift=0.0, power=1: _factor("sin", args, direction, coeffs, shift, power)  # noqa: E731
    return [
        s((1, 0, 0)),
        s((0, 1, 0)),
        s((1, 0, 1)),
        s((0, 1, 1)),
        s((0, 0, 2), 1.0),
        s((1, 1, 1), power=-1),
        s((1, 1, 2), power=-1),
        s((0, 0, 1), 1.0, power=-1),
    ]


def selberg22(args: SelbergArgs, direction: Direction = None) -> MeroSample:
    """Meromorphic continuation of the Selberg integral over the unit square.

    ``direction`` is the velocity ``d(a, b, c)/ds`` of the path along which a
    residue is taken.  Without it the residue is taken with respect to the
    argument of the offending Gamma factor, the other arguments held fixed.
    """
    return evaluate_product(_selberg22_factors(args, direction), point=args)


def selberg21(args: SelbergArgs, direction: Direction = None) -> MeroSample:
    """Selberg-type integral with one variable on (0,1) and one on (1, inf)."""
    factors = _selberg22_factors(args, direction) + [
        _factor("cos", args, direction, (0, 0, 1)),
        _factor("sin", args, direction, (1, 0, 1)),
        _factor("sin", args, direction, (1, 1, 2), power=-1),
    ]
    return evaluate_product(factors, point=args)


def neretin_df(holo: SelbergArgs, antiholo: SelbergArgs, direction: Direction = None) -> MeroSample:
    """Neretin's closed form for the complex two-variable Dotsenko-Fateev integral.

    Integer differences between holomorphic and antiholomorphic exponents are
    required; the sign ``(-1)^c`` is read as ``(-1)^(c - c~)``.  ``direction``
    moves both exponent triples together.
    """
    diffs = [complex(x) - complex(y) for x, y in zip(holo, antiholo)]
    idx = [_integer_index(d) for d in diffs]
    if any(i is None for i in idx):
        raise UsageError(f"holomorphic and antiholomorphic exponents must differ by integers, got {diffs}")
    sign = (-1) ** (idx[2] % 2)
    factors = _selberg22_factors(holo, direction) + _selberg22_factors(antiholo, direction) + _selberg_sines(holo, direction)
    return evaluate_product(factors, point=(holo, antiholo), constant=sign)


def df_args(alpha: complex, beta: complex, params: Params) -> SelbergArgs:
    """Exponents ``(a, b, c)`` of the complex integral with weights at 0, 1 and the diagonal."""
    g = params.gamma
    return SelbergArgs(-g * alpha / 2, 1 - g * beta / 2, -g * g / 4)


def dotsenko_fateev(alpha: complex, beta: complex, params: Params) -> MeroSample:
    """Complex Dotsenko-Fateev integral ``J_C^beta(alpha)``; residues are in alpha."""
    args = df_args(alpha, beta, params)
    return neretin_df(args, args, direction=(-params.gamma / 2, 0, 0))


def dotsenko_fateev_leading(alpha: complex, beta: complex, params: Params) -> complex:
    """Leading behaviour of ``J_C^beta(alpha)`` near ``(alpha21, 0)``."""
    g = params.gamma
    G = selberg_residue_factor(params)
    return -(2 / g) * math.pi * beta / ((alpha + g / 2) * (alpha + beta + g / 2)) * G**2 * math.sin(math.pi * g * g / 2)


def df_convergent(alpha: float, beta: float, params: Params) -> bool:
    """Absolute convergence of the complex integral: local exponents at 0, 1, inf and the diagonal."""
    g = params.gamma
    return (alpha < alpha21(params)) and (g * beta < 2) and (beta > -(alpha + g / 2)) and (g * g < 2)


# ---------------------------------------------------------------------------
# Kac-point residues


def selberg_residue_factor(params: Params) -> float:
    """Common factor ``Gamma(g^2/4) Gamma(1-g^2/2) / Gamma(1-g^2/4)``."""
    x = params.gamma**2 / 4
    return float(special.gamma(x) * special.gamma(1 - 2 * x) / special.gamma(1 - x))


def _require_subcritical(params: Params, what: str) -> None:
    ph = phase(params)
    if ph is Phase.CRITICAL:
        raise PhaseError(f"{what}: critical gamma = sqrt(2) is unsupported")
    if ph is Phase.SUPERCRITICAL:
        raise PhaseError(f"{what}: requires gamma < sqrt(2)")


def residue_J1(params: Params) -> float:
    """Residue at alpha21 of the disc integral with weight ``|w1 w2|^(-g alpha) |w1-w2|^(-g^2)``."""
    _require_subcritical(params, "residue_J1")
    g = params.gamma
    x = g * g / 4
    ratio = special.gamma(x) / special.gamma(1 - x)
    return float(-(2 / g) * (math.pi * ratio) ** 2 * special.gamma(1 - 2 * x) / special.gamma(2 * x))


def residue_J1_sine_form(params: Params) -> float:
    """The same residue written with ``sin(pi g^2/2)`` instead of ``1/Gamma(g^2/2)``."""
    _require_subcritical(params, "residue_J1")
    g = params.gamma
    return -(2 * math.pi / g) * selberg_residue_factor(params) ** 2 * math.sin(math.pi * g * g / 2)


def residue_J1_forms(params: Params) -> tuple[float, float]:
    """Both closed forms; they agree by Euler reflection at ``g^2/2``."""
    stated, sine_form = residue_J1(params), residue_J1_sine_form(params)
    if not math.isclose(stated, sine_form, rel_tol=1e-10):
        raise ArithmeticError(f"residue forms disagree: {stated} vs {sine_form}")
    return stated, sine_form


@dataclass(frozen=True)
class BoundaryResidues:
    """Residues at alpha21 of the three boundary integrals, in units of the shifted primary."""

    res_I2: float
    res_I11: float
    res_Ix11: float
    G: float
    phase: Phase


def boundary_residues(params: Params) -> BoundaryResidues:
    """Half-disc, same-side and opposite-side residues; zero when supercritical."""
    ph = phase(params)
    if ph is Phase.CRITICAL:
        raise PhaseError("boundary residues: critical gamma = sqrt(2) is unsupported")
    G = selberg_residue_factor(params) if ph is Phase.SUBCRITICAL else float("nan")
    if ph is Phase.SUPERCRITICAL:
        return BoundaryResidues(0.0, 0.0, 0.0, G, ph)
    g = params.gamma
    x = g * g / 4
    res_I2 = -(1 / g) * (x / (1 - x)) * math.sin(math.pi * x) * G
    res_I11 = -(2 / g) * G
    res_Ix11 = -(2 / g) * math.cos(math.pi * x) * G
    return BoundaryResidues(res_I2, res_I11, res_Ix11, G, ph)


def half_disc_angular(params: Params) -> float:
    """Closed form of the angular integral of ``(2 sin t)^(-g^2/2) cos 2t`` over (0, pi)."""
    x = params.gamma**2 / 4
    return x / (1 - x) * selberg_residue_factor(params) * math.sin(math.pi * x)


# ---------------------------------------------------------------------------
# HEM constants


class HemLabel(str, Enum):
    BULK12 = "bulk12"
    BULK21 = "bulk21"
    BOUNDARY12 = "boundary12"
    BOUNDARY21 = "boundary21"

    @property
    def is_21(self) -> bool:
        return self in (HemLabel.BULK21, HemLabel.BOUNDARY21)


CITATIONS: dict[HemLabel, tuple[str, ...]] = {
    HemLabel.BULK12: (
        "bulk (1,2) constant: \\pi\\mu\\frac{8}{\\gamma^3}\\left(1-\\frac{\\gamma^2}{4}\\right)^2",
        "one-insertion residue: -\\frac{2\\pi}{\\gamma(\\alpha-\\alpha_{1,2})}",
        "singular-state expansion: -\\frac{\\mu\\gamma^2}{4}\\mathcal{I}_{1,(2),(2)}(\\alpha)",
    ),
    HemLabel.BULK21: (
        "bulk (2,1) constant: -\\frac{\\gamma^5}{32}\\left(\\pi\\mu\\frac{\\Gamma(\\frac{\\gamma^2}{4})}{\\Gamma(1-\\frac{\\gamma^2}{4})}\\right)^2",
        "two-insertion continuation: \\frac{\\mu^2\\gamma^4}{16}\\mathcal{I}_{2,(1,1),(1,1)}(\\alpha)",
        "disc residue: -\\frac{2}{\\gamma}\\left(\\pi\\frac{\\Gamma(\\frac{\\gamma^2}{4})}{\\Gamma(1-\\frac{\\gamma^2}{4})}\\right)^2\\frac{\\Gamma(1-\\frac{\\gamma^2}{2})}{\\Gamma(\\frac{\\gamma^2}{2})}",
    ),
    HemLabel.BOUNDARY12: (
        "boundary (1,2) constant: \\frac{4}{\\gamma^2}\\left(1-\\frac{\\gamma^2}{4}\\right)(\\mu_\\mathrm{L}+\\mu_\\mathrm{R})",
        "boundary one-insertion residue: -\\frac{2}{\\gamma(\\alpha-\\alpha_{1,2})}",
    ),
    HemLabel.BOUNDARY21: (
        "boundary (2,1) constant: \\frac{\\gamma^3}{8}\\left(\\mu_\\mathrm{L}^2-2\\mu_\\mathrm{L}\\mu_\\mathrm{R}\\cos(\\pi\\frac{\\gamma^2}{4})+\\mu_\\mathrm{R}^2-\\mu\\sin(\\pi\\frac{\\gamma^2}{4})\\right)",
        "boundary continuation: \\frac{\\gamma^2}{8}\\mu_\\mathrm{L}^2\\mathcal{I}^\\partial_{(1,1),\\emptyset}(\\alpha)",
        "boundary residues: -\\frac{2}{\\gamma}\\cos(\\pi\\frac{\\gamma^2}{4})\\frac{\\Gamma(\\frac{\\gamma^2}{4})\\Gamma(1-\\frac{\\gamma^2}{2})}{\\Gamma(1-\\frac{\\gamma^2}{4})}",
    ),
}


def _label(label: HemLabel | str) -> HemLabel:
    try:
        return HemLabel(label)
    except ValueError as exc:
        raise UsageError(f"unknown constant label {label!r}; expected one of {[x.value for x in HemLabel]}") from exc


def boundary_bracket(params: Params) -> float:
    """Quadratic ``muL^2 - 2 muL muR cos + muR^2 - mu sin`` at ``x = pi g^2/4``."""
    x = math.pi * params.gamma**2 / 4
    return params.muL**2 - 2 * params.muL * params.muR * math.cos(x) + params.muR**2 - params.mu * math.sin(x)


def stated_constant(label: HemLabel | str, params: Params) -> float:
    """Stated closed form of the constant."""
    label = _label(label)
    g, mu = params.gamma, params.mu
    if label.is_21:
        ph = phase(params)
        if ph is Phase.CRITICAL:
            raise PhaseError(f"{label.value}: critical gamma = sqrt(2) is unsupported")
        if ph is Phase.SUPERCRITICAL:
            return 0.0
    if label is HemLabel.BULK12:
        return math.pi * mu * 8 / g**3 * (1 - g * g / 4) ** 2
    if label is HemLabel.BOUNDARY12:
        return 4 / g**2 * (1 - g * g / 4) * (params.muL + params.muR)
    x = g * g / 4
    if label is HemLabel.BULK21:
        ratio = special.gamma(x) / special.gamma(1 - x)
        return float(-(g**5) / 32 * (math.pi * mu * ratio) ** 2 * special.gamma(1 - 2 * x) / special.gamma(2 * x))
    return g**3 / 8 * boundary_bracket(params) * selberg_residue_factor(params)


@dataclass(frozen=True)
class ChainStep:
    name: str
    value: float
    citation: str


def chain_steps(label: HemLabel | str, params: Params) -> list[ChainStep]:
    """Intermediate quantities composing a constant; the last step is the constant."""
    label = _label(label)
    g, mu, muL, muR = params.gamma, params.mu, params.muL, params.muR
    a12, a21 = alpha12(params), alpha21(params)
    cite = CITATIONS[label]
    if label.is_21:
        ph = phase(params)
        if ph is Phase.CRITICAL:
            raise PhaseError(f"{label.value}: critical gamma = sqrt(2) is unsupported")
    if label is HemLabel.BULK12:
        res_I1 = -2 * math.pi / g
        res_P = -mu * g * g / 4 * res_I1
        return [
            ChainStep("residue of one-insertion integral at alpha12", res_I1, cite[1]),
            ChainStep("residue of P(4|phi2|^2-1) at alpha12", res_P, cite[2]),
            ChainStep("constant = alpha12^2 (alpha12-alpha21)^2 * residue", a12**2 * (a12 - a21) ** 2 * res_P, cite[0]),
        ]
    if label is HemLabel.BULK21:
        res_I2 = residue_J1(params) if phase(params) is Phase.SUBCRITICAL else 0.0
        # (alpha - alpha12)^2 P = mu^2 g^4/16 I2 + regular, so divide by (alpha21-alpha12)^2
        res_P = mu**2 * g**4 / 16 * res_I2 / (a21 - a12) ** 2
        return [
            ChainStep("residue of two-insertion integral at alpha21", res_I2, cite[2]),
            ChainStep("residue of P(4|phi2|^2-1) at alpha21", res_P, cite[1]),
            ChainStep("constant = alpha21^2 (alpha21-alpha12)^2 * residue", a21**2 * (a21 - a12) ** 2 * res_P, cite[0]),
        ]
    if label is HemLabel.BOUNDARY12:
        res_Ib = -2 / g
        res_P = -g / 4 * muL * res_Ib - g / 4 * muR * res_Ib
        return [
            ChainStep("residue of boundary one-insertion integral at alpha12", res_Ib, cite[1]),
            ChainStep("residue of P(phi2) at alpha12", res_P, cite[1]),
            ChainStep("constant = 2 alpha12 (alpha12-alpha21) * residue", 2 * a12 * (a12 - a21) * res_P, cite[0]),
        ]
    res = boundary_residues(params)
    # (alpha - alpha12) P(phi2) composition with the muR^2 factor restored on the last integral
    res_combo = (
        -mu * g / 2 * (a21 - a12) * res.res_I2
        + muL**2 * g * g / 8 * res.res_I11
        - muL * muR * g * g / 4 * res.res_Ix11
        + muR**2 * g * g / 8 * res.res_I11
    )
    return [
        ChainStep("half-disc residue", res.res_I2, cite[2]),
        ChainStep("same-side residue", res.res_I11, cite[2]),
        ChainStep("opposite-side residue", res.res_Ix11, cite[2]),
        ChainStep("residue of (alpha-alpha12) P(phi2) at alpha21", res_combo, cite[1]),
        ChainStep("constant = 2 alpha21 * residue", 2 * a21 * res_combo, cite[0]),
    ]


def hem_chain(label: HemLabel | str, params: Params) -> float:
    """The constant recomposed from residues and algebraic prefactors."""
    return chain_steps(label, params)[-1].value


@dataclass(frozen=True)
class HemConstant:
    label: HemLabel
    stated: float
    chained: float
    phase: Phase
    params: Params = field(repr=False, default=None)  # type: ignore[assignment]

    @property
    def ratio(self) -> float | None:
        """``chained / stated``; None when the stated value is zero."""
        return None if self.stated == 0 else self.chained / self.stated

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label.value,
            "params": self.params.as_dict() if self.params else None,
            "stated": self.stated,
            "chained": self.chained,
            "ratio": self.ratio,
            "phase": self.phase.value,
            "citations": list(CITATIONS[self.label]),
        }


def hem_constant(label: HemLabel | str, params: Params) -> HemConstant:
    """Stated and chained value of a HEM constant."""
    label = _label(label)
    return HemConstant(label, stated_constant(label, params), hem_chain(label, params), phase(params), params)


# ---------------------------------------------------------------------------
# FZZ conic


@dataclass(frozen=True)
class FZZConic:
    value: float
    on_conic: bool
    solve_muR: Callable[[float, float], list[float]]


def fzz_roots(gamma: float, muL: float, mu: float) -> list[float]:
    """Real roots in ``muR`` of the boundary (2,1) bracket, ascending."""
    x = math.pi * gamma**2 / 4
    cos, sin = math.cos(x), math.sin(x)
    disc = (muL * cos) ** 2 - muL**2 + mu * sin
    if disc < 0:
        return []
    root = math.sqrt(disc)
    return sorted({muL * cos - root, muL * cos + root})


def fzz_conic(params: Params) -> FZZConic:
    """Bracket value at ``params`` and a root solver at the same gamma."""
    value = boundary_bracket(params)
    scale = max(1.0, params.muL**2, params.muR**2, params.mu)
    gamma = params.gamma
    return FZZConic(value, abs(value) <= TOL_CONIC * scale, lambda muL, mu: fzz_roots(gamma, muL, mu))


# ---------------------------------------------------------------------------
# emitters

CSV_COLUMNS = ("gamma", "mu", "muL", "muR", "constant_label", "stated_re", "stated_im", "chained_re", "chained_im")


def constants_csv(constants: Iterable[HemConstant]) -> str:
    """CSV table of a parameter sweep."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for c in constants:
        p = c.params
        stated, chained = complex(c.stated), complex(c.chained)
        writer.writerow(
            [p.gamma, p.mu, p.muL, p.muR, c.label.value, repr(stated.real), repr(stated.imag), repr(chained.real), repr(chained.imag)]
        )
    return buf.getvalue()
