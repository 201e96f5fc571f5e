"""Experiment configuration: one JSON object, validated on load.

Schema (every key optional, defaults below)::

    {
      "scenario": "cran",          # cran | dualconn | d2d | caching
      "m": 20,                     # users (D2D: number of links)
      "n": [10],                   # RRHs / SAPs, one run per entry
      "k": 10,                     # channels
      "seeds": [0],                # distinct integers
      "area": null,                # square side in metres, null = scenario default
      "radio": {},                 # RadioParams overrides
      "d2d_mode": "best_response", # or "stochastic"
      "beta": 1.0,
      "max_rounds": 200,
      "rule": "softmax",           # or "linear"
      "caching_policy": "centralized",  # or "distributed"
      "contents": 8,
      "cache_size": 2,
      "k_max": 3,
      "rrh_exclusive": false,
      "out": null                  # CSV / instance output path
    }
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from .radio import RadioParams

__all__ = ["ConfigError", "ExperimentConfig", "SCENARIOS", "load_config", "save_config", "config_hash"]

SCENARIOS = ("cran", "dualconn", "d2d", "caching")
DEFAULT_AREA = {"cran": 500.0, "dualconn": 500.0, "d2d": 500.0, "caching": 200.0}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: str = "cran"
    m: int = 20
    n: tuple[int, ...] = (10,)
    k: int = 10
    seeds: tuple[int, ...] = (0,)
    area: float | None = None
    radio: dict = field(default_factory=dict)
    d2d_mode: str = "best_response"
    beta: float = 1.0
    max_rounds: int = 200
    rule: str = "softmax"
    caching_policy: str = "centralized"
    contents: int = 8
    cache_size: int = 2
    k_max: int = 3
    rrh_exclusive: bool = False
    out: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(x) for x in self.n))
        object.__setattr__(self, "seeds", tuple(int(x) for x in self.seeds))
        object.__setattr__(self, "radio", dict(self.radio))
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}; choose from {', '.join(SCENARIOS)}")
        if not self.n:
            raise ConfigError("n must list at least one value")
        if not self.seeds:
            raise ConfigError("seeds must list at least one value")
        if len(set(self.seeds)) != len(self.seeds):
            raise ConfigError(f"seeds must be distinct, got {list(self.seeds)}")
        if self.m < 1 or self.k < 1 or min(self.n) < 1:
            raise ConfigError("m, n and k must all be >= 1")
        if self.d2d_mode not in ("best_response", "stochastic"):
            raise ConfigError(f"unknown d2d_mode {self.d2d_mode!r}")
        if self.rule not in ("softmax", "linear"):
            raise ConfigError(f"unknown rule {self.rule!r}")
        if self.caching_policy not in ("centralized", "distributed"):
            raise ConfigError(f"unknown caching_policy {self.caching_policy!r}")
        if self.max_rounds < 1 or self.k_max < 1 or self.contents < 1 or self.cache_size < 1:
            raise ConfigError("max_rounds, k_max, contents and cache_size must be >= 1")
        if self.area is not None and not self.area > 0:
            raise ConfigError(f"area must be > 0, got {self.area}")
        try:
            self.radio_params()
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad radio overrides: {exc}") from exc

    def radio_params(self) -> RadioParams:
        return RadioParams.from_dict(self.radio)

    @property
    def side(self) -> float:
        return DEFAULT_AREA[self.scenario] if self.area is None else float(self.area)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["n"] = list(self.n)
        d["seeds"] = list(self.seeds)
        return d

    def override(self, **changes) -> "ExperimentConfig":
        """Copy with the non-``None`` entries of ``changes`` applied."""
        changes = {k: v for k, v in changes.items() if v is not None}
        try:
            return replace(self, **changes)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        d = dict(d)
        if "n" in d and isinstance(d["n"], int):
            d["n"] = [d["n"]]
        try:
            return cls(**d)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc


def config_hash(cfg: ExperimentConfig) -> str:
    """Short digest of everything that affects results (not the output path)."""
    d = cfg.to_dict()
    d.pop("out")
    d["radio"] = cfg.radio_params().to_dict()
    blob = json.dumps(d, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return ExperimentConfig.from_dict(data)


def save_config(cfg: ExperimentConfig, path) -> None:
    Path(path).write_text(json.dumps(cfg.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
