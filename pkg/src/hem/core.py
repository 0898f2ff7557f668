"""Model parameters, Kac-table labels, conformal weights and partitions."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping

import tomli
import tomli_w

EPS_PHASE = 1e-9


class HemError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(HemError, ValueError):
    """Parameters lie outside the convergence region of an integral."""


class PoleError(HemError, ZeroDivisionError):
    """Evaluation hit a pole."""


class UnsupportedOrderError(HemError):
    """A pole of order two or more was requested."""


class PhaseError(HemError):
    """Computation refused at the given phase of gamma."""


class SectorError(HemError, ValueError):
    """Operator side does not exist in the requested sector."""


class ResolutionError(HemError, ValueError):
    """A probe radius is below the grid resolution."""


class ConditioningError(HemError, ArithmeticError):
    """A covariance matrix could not be factorized."""


class UsageError(HemError, ValueError):
    """Invalid configuration or command-line usage."""


class Phase(str, Enum):
    SUBCRITICAL = "subcritical"
    CRITICAL = "critical"
    SUPERCRITICAL = "supercritical"


@dataclass(frozen=True)
class Params:
    """Coupling ``gamma`` and the bulk/boundary cosmological constants."""

    gamma: float
    mu: float = 1.0
    muL: float = 0.0
    muR: float = 0.0

    def __post_init__(self) -> None:
        for name in ("gamma", "mu", "muL", "muR"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
                raise UsageError(f"{name} must be a finite real number, got {value!r}")
            object.__setattr__(self, name, float(value))
        if not 0.0 < self.gamma < 2.0:
            raise UsageError(f"gamma must lie in (0, 2), got {self.gamma}")
        for name in ("mu", "muL", "muR"):
            if getattr(self, name) < 0.0:
                raise UsageError(f"{name} must be non-negative")

    @property
    def b(self) -> float:
        return self.gamma / 2.0

    @property
    def Q(self) -> float:
        return self.gamma / 2.0 + 2.0 / self.gamma

    @property
    def c_L(self) -> float:
        return 1.0 + 6.0 * self.Q**2

    def replace(self, **changes: float) -> "Params":
        data = self.as_dict()
        data.update(changes)
        return Params(**data)

    def as_dict(self) -> dict[str, float]:
        return {"gamma": self.gamma, "mu": self.mu, "muL": self.muL, "muR": self.muR}

    def to_toml(self) -> str:
        table = {"gamma": self.gamma, "mu": self.mu, "mu_l": self.muL, "mu_r": self.muR}
        return tomli_w.dumps({"params": table})

    @classmethod
    def from_mapping(cls, table: Mapping[str, Any]) -> "Params":
        known = {"gamma", "mu", "mu_l", "mu_r"}
        unknown = set(table) - known
        if unknown:
            raise UsageError(f"unknown params keys: {sorted(unknown)}")
        if "gamma" not in table:
            raise UsageError("params table requires 'gamma'")
        return cls(
            gamma=table["gamma"],
            mu=table.get("mu", 1.0),
            muL=table.get("mu_l", 0.0),
            muR=table.get("mu_r", 0.0),
        )

    @classmethod
    def from_toml(cls, text: str) -> "Params":
        try:
            doc = tomli.loads(text)
        except tomli.TOMLDecodeError as exc:
            raise UsageError(f"invalid TOML: {exc}") from exc
        if "params" not in doc:
            raise UsageError("missing [params] table")
        return cls.from_mapping(doc["params"])


@dataclass(frozen=True)
class KacLabel:
    """Label (r, s) of the Kac table with a sign selecting kac- or kac+."""

    r: int
    s: int
    sign: str = "minus"

    def __post_init__(self) -> None:
        if not (isinstance(self.r, int) and isinstance(self.s, int)) or self.r < 1 or self.s < 1:
            raise UsageError(f"Kac indices must be positive integers, got ({self.r}, {self.s})")
        sign = {"-": "minus", "+": "plus"}.get(self.sign, self.sign)
        if sign not in ("minus", "plus"):
            raise UsageError(f"Kac sign must be 'minus' or 'plus', got {self.sign!r}")
        object.__setattr__(self, "sign", sign)

    @classmethod
    def parse(cls, text: str) -> "KacLabel":
        """Parse ``"r,s"`` or ``"r,s,-"`` / ``"r,s,+"``."""
        pieces = [p.strip() for p in text.split(",")]
        if len(pieces) not in (2, 3):
            raise UsageError(f"Kac label must look like 'r,s' or 'r,s,±', got {text!r}")
        try:
            r, s = int(pieces[0]), int(pieces[1])
        except ValueError as exc:
            raise UsageError(f"Kac indices must be integers, got {text!r}") from exc
        return cls(r, s, pieces[2] if len(pieces) == 3 else "minus")

    def __str__(self) -> str:
        return f"{self.r},{self.s},{'-' if self.sign == 'minus' else '+'}"


@dataclass(frozen=True)
class Partition:
    """Integer partition stored as a non-increasing tuple of positive parts."""

    parts: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise UsageError(f"partition parts must be positive, got {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise UsageError(f"partition parts must be non-increasing, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip()
        if text in ("", "()", "empty", "0"):
            return cls(())
        try:
            return cls(tuple(int(p) for p in text.strip("()").split(",") if p.strip()))
        except ValueError as exc:
            raise UsageError(f"invalid partition {text!r}") from exc

    @property
    def level(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def kac_alpha(label: KacLabel, params: Params) -> float:
    """Return alpha_{r,s} for kac- or its reflection 2Q - alpha_{r,s} for kac+."""
    minus = (1 - label.r) * params.gamma / 2.0 + (1 - label.s) * 2.0 / params.gamma
    if label.sign == "minus":
        return minus
    return 2.0 * params.Q - minus


def alpha12(params: Params) -> float:
    return kac_alpha(KacLabel(1, 2), params)


def alpha21(params: Params) -> float:
    return kac_alpha(KacLabel(2, 1), params)


def delta(alpha: complex, params: Params) -> complex:
    """Conformal weight (alpha/2)(Q - alpha/2)."""
    return alpha / 2.0 * (params.Q - alpha / 2.0)


def phase(params: Params) -> Phase:
    root2 = math.sqrt(2.0)
    if abs(params.gamma - root2) <= EPS_PHASE * root2:
        return Phase.CRITICAL
    return Phase.SUBCRITICAL if params.gamma < root2 else Phase.SUPERCRITICAL


def as_complex(value: Any) -> complex:
    if isinstance(value, complex):
        return value
    return complex(value)


def is_close(x: complex, y: complex, rel: float, abs_: float = 0.0) -> bool:
    return cmath.isclose(x, y, rel_tol=rel, abs_tol=abs_)
