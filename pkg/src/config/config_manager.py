from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from src.errors import ConfigError

DEFAULTS: Dict[str, Any] = {
    "estimation": {"theta": 10_000, "mcs_rounds": 10_000, "workers": 1},
    "evaluation": {"rounds": 100_000, "mode": "auto"},
    "run": {"repeats": 5, "time_limit": 86_400.0, "master_seed": 0, "workers": 1},
    "exact": {"max_uncertain": 25, "max_combinations": 1_000_000, "estimator": "exact"},
    "replace": {"top_up": False},
    "baseline": {"common_random_numbers": True},
    "sweep": {"thetas": [], "seeds": []},
}


@dataclass
class ConfigManager:
    """
    Lightweight config wrapper supporting dot-path access:

        cfg.get("estimation.theta")
        cfg.get("run.time_limit", default=60.0)

    Accepts a nested dict-like config; ``with_defaults`` layers user values
    over ``DEFAULTS``.
    """

    data: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def with_defaults(cls, overrides: Optional[Mapping[str, Any]] = None) -> "ConfigManager":
        data = copy.deepcopy(DEFAULTS)
        if overrides:
            _deep_merge(data, overrides)
        return cls(data)

    @classmethod
    def from_file(cls, path: str | Path) -> "ConfigManager":
        try:
            payload = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(payload, dict):
            raise ConfigError(f"config {path} must contain a JSON object")
        return cls.with_defaults(payload)

    def get(self, key: str, default: Any = None) -> Any:
        if not key:
            return self.data
        cur: Any = self.data
        for part in key.split("."):
            if isinstance(cur, dict) and part in cur:
                cur = cur[part]
            else:
                return default
        return cur

    def require(self, key: str) -> Any:
        value = self.get(key)
        if value is None:
            raise ConfigError(f"missing configuration value: {key}")
        return value

    def set(self, key: str, value: Any) -> None:
        parts = key.split(".")
        cur = self.data
        for p in parts[:-1]:
            nxt = cur.get(p)
            if not isinstance(nxt, dict):
                nxt = {}
                cur[p] = nxt
            cur = nxt
        cur[parts[-1]] = value


def _deep_merge(base: Dict[str, Any], extra: Mapping[str, Any]) -> None:
    for key, value in extra.items():
        if isinstance(value, Mapping) and isinstance(base.get(key), dict):
            _deep_merge(base[key], value)
        else:
            base[key] = copy.deepcopy(value)
