"""Verification reports: canonical JSON, CSV and a separate timing sidecar."""

from __future__ import annotations

import csv
import dataclasses
import datetime as _dt
import enum
import hashlib
import io
import json
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any

import numpy as np

from .. import __version__

STATUSES = ("pass", "fail", "inconclusive", "report")
# "label: formula" where the formula carries at least one TeX control sequence
CITATION_PATTERN = re.compile(r"^[^:]+: .*\\[A-Za-z]+")
CSV_FIELDS = ("id", "criterion", "status", "stated", "oracle", "error", "tolerance", "metric")


def plain(obj: Any) -> Any:
    """Convert to JSON-ready builtins; non-finite floats become strings."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return plain(obj.to_dict() if hasattr(obj, "to_dict") else dataclasses.asdict(obj))
    if isinstance(obj, enum.Enum):
        return plain(obj.value)
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        return plain(z.real) if z.imag == 0 else [plain(z.real), plain(z.imag)]
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def canonical_json(obj: Any) -> str:
    return json.dumps(plain(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


@lru_cache(maxsize=1)
def build_hash() -> str:
    """Digest of the installed package sources."""
    root = Path(__file__).resolve().parents[1]
    digest = hashlib.sha256()
    for path in sorted(root.rglob("*.py")):
        digest.update(path.relative_to(root).as_posix().encode())
        digest.update(b"\0")
        digest.update(path.read_bytes())
    return digest.hexdigest()[:16]


@dataclass
class Check:
    """One verified statement: a stated value against an independent oracle."""

    id: str
    citation: str
    stated: Any
    oracle: Any
    tolerance: float | None
    status: str
    metric: str = "relative error"
    error: float | None = None
    criterion: int | None = None
    reason: str = ""
    detail: dict = field(default_factory=dict)
    runtime: float = field(default=0.0, compare=False)

    def __post_init__(self) -> None:
        if not CITATION_PATTERN.match(self.citation or ""):
            raise ValueError(f"check {self.id!r} needs a 'label: formula' citation, got {self.citation!r}")
        if self.status not in STATUSES:
            raise ValueError(f"check {self.id!r} has unknown status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    @property
    def status_text(self) -> str:
        return f"{self.status} ({self.reason})" if self.reason else self.status

    def to_dict(self) -> dict:
        out = {f.name: getattr(self, f.name) for f in dataclasses.fields(self) if f.name != "runtime"}
        out["passed"] = self.passed
        return out


@dataclass
class VerificationReport:
    """Checks of one command or suite and the environment they ran in."""

    name: str
    checks: list[Check]
    seed: int
    config: dict
    data: dict = field(default_factory=dict)
    timestamp: str = field(default_factory=lambda: _dt.datetime.now(_dt.timezone.utc).isoformat(), compare=False)

    @property
    def status(self) -> str:
        if any(c.status == "fail" for c in self.checks):
            return "fail"
        if any(c.status == "inconclusive" for c in self.checks):
            return "inconclusive"
        return "pass"

    @property
    def status_text(self) -> str:
        if self.status != "inconclusive":
            return self.status
        reasons = sorted({c.reason for c in self.checks if c.status == "inconclusive" and c.reason})
        return f"inconclusive ({'; '.join(reasons)})" if reasons else "inconclusive"

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    @property
    def environment(self) -> dict:
        return {"seed": self.seed, "version": __version__, "build_hash": build_hash()}

    def check(self, check_id: str) -> Check:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "status_text": self.status_text,
            "checks": [c.to_dict() for c in self.checks],
            "environment": self.environment,
            "config": self.config,
            "data": self.data,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    def timing_json(self) -> str:
        runtimes = {c.id: c.runtime for c in self.checks}
        return canonical_json({"name": self.name, "timestamp": self.timestamp, "runtimes": runtimes,
                               "total": sum(runtimes.values())})

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for c in self.checks:
            row = plain([c.id, c.criterion, c.status, _scalar(c.stated), _scalar(c.oracle), c.error,
                         c.tolerance, c.metric])
            writer.writerow(["" if v is None else v for v in row])
        return buf.getvalue()

    def summary_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            err = "" if c.error is None else f" error={c.error:.3g}"
            if c.error is None and isinstance(c.oracle, (int, float)) and not isinstance(c.oracle, bool):
                err = f" value={c.oracle:.6g}"
            tol = "" if c.tolerance is None else f" tol={c.tolerance:.3g}"
            lines.append(f"{c.status_text:<14} {c.id}{err}{tol}")
        lines.append(f"overall: {self.status_text}")
        return lines

    def write(self, out_dir: str | Path, stem: str, extra_csv: str | None = None) -> list[Path]:
        """Persist JSON, CSV and timing files; ``extra_csv`` replaces the check table."""
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        files = {
            out / f"{stem}.json": self.to_json(),
            out / f"{stem}.csv": extra_csv if extra_csv is not None else self.to_csv(),
            out / f"{stem}.timing.json": self.timing_json(),
        }
        for path, text in files.items():
            path.write_text(text, encoding="utf-8")
        return list(files)


def _scalar(value: Any) -> Any:
    """Table cell for a stated or oracle value; lists are summarised by their first entry."""
    if isinstance(value, (list, tuple)):
        return "" if not value else f"{value[0]} (+{len(value) - 1})" if len(value) > 1 else value[0]
    return value
