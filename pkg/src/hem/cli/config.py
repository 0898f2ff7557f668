"""Run configuration with per-command defaults and a lossless TOML form."""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Any

import tomli
import tomli_w

from ..core import Params, UsageError

CONFIG_VERSION = 1
DEFAULT_SEED = 20240601
DEFAULT_OUT = "hem-results"

SUITES = ("algebra", "selberg", "residues", "chains", "gmc")
SUITE_CHOICES = SUITES + ("all",)

# Defaults of every command option; bump CONFIG_VERSION when any of these change.
DEFAULT_OPTIONS: dict[str, dict[str, Any]] = {
    "constants": {},
    "singular-vector": {"sector": "bulk", "at_kac": ""},
    "verify-selberg": {"triples": 20, "relation_triples": 5, "tol": 1e-7, "relation_tol": 1e-6,
                       "a": "", "b": "", "c": ""},
    "residue": {"integral": "J1", "tol": 0.02},
    "probe-regularity": {"integral": "J2", "window": 0.2, "levels": 7},
    # an empty radii list selects six geometric radii in [0.02, 0.4]
    "gmc-fusion": {"alpha": -1.0, "radii": [], "samples": 10_000, "grid_n": 2048},
    "suite": {"suite": "all", "samples": 10_000, "mc_samples": 10_000_000, "gammas": [0.8, 1.0, 1.2]},
}
COMMANDS = tuple(DEFAULT_OPTIONS)


def _check_type(command: str, key: str, value: Any) -> Any:
    default = DEFAULT_OPTIONS[command][key]
    if isinstance(default, bool) or isinstance(value, bool):
        ok = isinstance(value, bool) and isinstance(default, bool)
    elif isinstance(default, float):
        ok = isinstance(value, (int, float))
        value = float(value) if ok else value
    elif isinstance(default, int):
        ok = isinstance(value, int)
    elif isinstance(default, list):
        ok = isinstance(value, (list, tuple)) and all(isinstance(v, (int, float)) for v in value)
        value = [float(v) for v in value] if ok else value
    else:
        ok = isinstance(value, str) or (default == "" and isinstance(value, (int, float)))
    if not ok:
        raise UsageError(f"option {key!r} of {command!r} expects {type(default).__name__}, got {value!r}")
    return value


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines the output of one command run."""

    command: str
    params: Params = field(default_factory=lambda: Params(1.0))
    seed: int = DEFAULT_SEED
    out: str = DEFAULT_OUT
    options: dict[str, Any] = field(default_factory=dict)
    version: int = CONFIG_VERSION

    def __post_init__(self) -> None:
        if self.command not in DEFAULT_OPTIONS:
            raise UsageError(f"unknown command {self.command!r}; expected one of {COMMANDS}")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool) or self.seed < 0:
            raise UsageError(f"seed must be a non-negative integer, got {self.seed!r}")
        if self.version != CONFIG_VERSION:
            raise UsageError(f"config version {self.version} is not supported (expected {CONFIG_VERSION})")
        merged = copy.deepcopy(DEFAULT_OPTIONS[self.command])
        for key, value in self.options.items():
            if key not in merged:
                raise UsageError(f"unknown option {key!r} for {self.command!r}; expected one of {sorted(merged)}")
            merged[key] = _check_type(self.command, key, value)
        if self.command == "suite" and merged["suite"] not in SUITE_CHOICES:
            raise UsageError(f"unknown suite {merged['suite']!r}; expected one of {SUITE_CHOICES}")
        object.__setattr__(self, "options", merged)

    def option(self, key: str) -> Any:
        return self.options[key]

    def with_changes(self, params: dict | None = None, options: dict | None = None, **top: Any) -> "RunConfig":
        data = {"command": self.command, "params": self.params, "seed": self.seed, "out": self.out,
                "options": dict(self.options), "version": self.version}
        if params:
            data["params"] = self.params.replace(**params)
        if options:
            data["options"].update(options)
        data.update(top)
        return RunConfig(**data)

    def as_dict(self) -> dict[str, Any]:
        p = self.params
        return {
            "version": self.version,
            "command": self.command,
            "seed": self.seed,
            "out": self.out,
            "params": {"gamma": p.gamma, "mu": p.mu, "mu_l": p.muL, "mu_r": p.muR},
            "options": copy.deepcopy(self.options),
        }

    def to_toml(self) -> str:
        return tomli_w.dumps(self.as_dict())

    @classmethod
    def from_mapping(cls, doc: dict[str, Any]) -> "RunConfig":
        known = {"version", "command", "seed", "out", "params", "options"}
        unknown = set(doc) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        for key in ("command", "params"):
            if key not in doc:
                raise UsageError(f"config is missing the required field {key!r}")
        return cls(
            command=doc["command"],
            params=Params.from_mapping(doc["params"]),
            seed=doc.get("seed", DEFAULT_SEED),
            out=doc.get("out", DEFAULT_OUT),
            options=dict(doc.get("options", {})),
            version=doc.get("version", CONFIG_VERSION),
        )

    @classmethod
    def from_toml(cls, text: str) -> "RunConfig":
        try:
            doc = tomli.loads(text)
        except tomli.TOMLDecodeError as exc:
            raise UsageError(f"invalid TOML: {exc}") from exc
        return cls.from_mapping(doc)
