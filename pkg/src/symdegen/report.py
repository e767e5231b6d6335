"""Run configuration and machine-readable reports."""
from __future__ import annotations

import csv
import io
import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Any, Optional

import jsonschema

from .sampling import DEFAULT_SEED, DEFAULT_TRIALS

STATUSES = ("pass", "fail", "skipped")


@dataclass
class RunConfig:
    command: str
    suite: Optional[str] = None
    m: int = 3
    degen: str = "clone"
    r: Optional[int] = None
    map: Optional[str] = None
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    max_degree: Optional[int] = None
    allow_slow: bool = False
    format: str = "json"

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        return cls(**{k: v for k, v in d.items() if k in cls.__dataclass_fields__})


@dataclass
class Check:
    name: str
    status: str
    expected: Any = None
    actual: Any = None
    witness: Any = None
    ms: float = 0.0
    reason: Optional[str] = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")


def compare(name: str, expected, actual, witness=None) -> Check:
    return Check(name, "pass" if expected == actual else "fail", expected, actual, witness)


def info(name: str, actual, witness=None) -> Check:
    """A measured value with no claim attached; always passes."""
    return Check(name, "pass", None, actual, witness)


def skipped(name: str, reason: str) -> Check:
    return Check(name, "skipped", reason=reason)


@contextmanager
def timed(checks: list):
    """Stamp the elapsed milliseconds on every check appended inside the block."""
    start, n0 = time.perf_counter(), len(checks)
    yield
    ms = round((time.perf_counter() - start) * 1000, 3)
    for c in checks[n0:]:
        c.ms = ms


@dataclass
class Report:
    config: RunConfig
    checks: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return "fail" if any(c.status == "fail" for c in self.checks) else "pass"

    def to_dict(self) -> dict:
        checks = []
        for c in self.checks:
            d = asdict(c)
            if d["reason"] is None:
                d.pop("reason")
            checks.append(d)
        return {"config": self.config.to_dict(), "status": self.status, "checks": checks}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "status", "expected", "actual", "witness", "ms", "reason", "config"])
        cfg = json.dumps(self.config.to_dict(), sort_keys=True)
        for c in self.checks:
            w.writerow([c.name, c.status, json.dumps(c.expected), json.dumps(c.actual),
                        json.dumps(c.witness), c.ms, c.reason or "", cfg])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"# {self.config.command}" + (f" {self.config.suite}" if self.config.suite else "")
                 + f"  m={self.config.m} degen={self.config.degen}"
                 + (f" r={self.config.r}" if self.config.r is not None else "")
                 + f" seed={self.config.seed} trials={self.config.trials}"]
        w = max([len(c.name) for c in self.checks] + [4])
        for c in self.checks:
            detail = c.reason if c.status == "skipped" else f"expected={_short(c.expected)} actual={_short(c.actual)}"
            lines.append(f"{c.status.upper():7} {c.name.ljust(w)}  {detail}  ({c.ms} ms)")
        lines.append(f"overall: {self.status}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return {"json": self.to_json, "csv": self.to_csv, "text": self.to_text}[fmt]()


def _short(x) -> str:
    s = json.dumps(x)
    return s if len(s) <= 60 else s[:57] + "..."


def load_schema() -> dict:
    return json.loads(resources.files("symdegen").joinpath("report_schema.json").read_text())


def validate(doc: dict) -> None:
    jsonschema.validate(doc, load_schema())


def strip_timing(doc: dict) -> dict:
    out = json.loads(json.dumps(doc))
    for c in out.get("checks", []):
        c.pop("ms", None)
    return out
