"""Run configuration with a JSON representation.

Schema (all keys optional)::

    {
      "preset": "ex1",            # ex1 | ex2 | ex3 | ex3b, or null with "problem"
      "block": 1,                 # parameter block of the preset (1-based)
      "params": {"gamma": 0.9},   # overrides of preset parameters
      "problem": null,            # explicit problem, see presets.custom_case
      "dim": null, "M": null, "N": null, "T": 1.0,
      "sweep": "temporal",        # temporal (vary N) | spatial (vary M)
      "values": [20, 40, 80],
      "format": "csv",            # csv | markdown
      "out": null,
      "start": "exact",           # taylor | taylor2 | exact
      "forcing": "analytic",      # analytic | discrete
      "jobs": 1
    }
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from ..solver import START_MODES

__all__ = ["RunConfig", "ConfigError", "SWEEP_AXES", "FORMATS", "FORCING_MODES"]

SWEEP_AXES = ("temporal", "spatial")
FORMATS = ("csv", "markdown")
FORCING_MODES = ("analytic", "discrete")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    preset: str | None = "ex1"
    block: int = 1
    params: dict = field(default_factory=dict)
    problem: dict | None = None
    dim: int | None = None
    M: int | None = None
    N: int | None = None
    T: float = 1.0
    sweep: str = "temporal"
    values: tuple[int, ...] | None = None
    format: str = "csv"
    out: str | None = None
    start: str = "exact"
    forcing: str = "analytic"
    jobs: int = 1

    def __post_init__(self):
        from .presets import PRESETS

        if self.values is not None:
            object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.preset is None and self.problem is None:
            raise ConfigError("either 'preset' or 'problem' must be given")
        if self.preset is not None and self.preset not in PRESETS:
            raise ConfigError(f"unknown preset {self.preset!r}; known: {', '.join(PRESETS)}")
        if self.preset is not None:
            nblocks = len(PRESETS[self.preset].blocks)
            if not 1 <= self.block <= nblocks:
                raise ConfigError(f"preset {self.preset} has blocks 1..{nblocks}, got {self.block}")
        if self.sweep not in SWEEP_AXES:
            raise ConfigError(f"sweep must be one of {SWEEP_AXES}, got {self.sweep!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.start not in START_MODES:
            raise ConfigError(f"start must be one of {START_MODES}, got {self.start!r}")
        if self.forcing not in FORCING_MODES:
            raise ConfigError(f"forcing must be one of {FORCING_MODES}, got {self.forcing!r}")
        if self.values is not None:
            v = self.values
            if not v:
                raise ConfigError("sweep values must not be empty")
            if any(b <= a for a, b in zip(v, v[1:])):
                raise ConfigError(f"sweep values must be strictly increasing, got {list(v)}")
            if v[0] < 2:
                raise ConfigError("sweep values must be at least 2")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if not self.T > 0:
            raise ConfigError("T must be positive")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["values"] = list(self.values) if self.values is not None else None
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(extra))}")
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(data)

    @classmethod
    def load(cls, path) -> "RunConfig":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        return cls.from_json(text)

    def save(self, path) -> None:
        Path(path).write_text(self.to_json() + "\n")

    def updated(self, **changes) -> "RunConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})
