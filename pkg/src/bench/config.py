from __future__ import annotations

from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from src.config import ConfigManager
from src.datasets import DatasetSpec, ProbModel
from src.errors import ConfigError
from src.graphs.prob_graph import BlockKind, DiffusionModel
from src.minimizers.factory import ALGORITHMS


@dataclass(frozen=True)
class RunConfig:
    """Everything one experiment needs, resolved from a ConfigManager.

    Exactly one of ``dataset`` and ``synthetic`` (n, m) names the input graph.
    """

    algorithm: str
    budgets: Tuple[int, ...]
    dataset: Optional[DatasetSpec] = None
    synthetic: Optional[Tuple[int, int]] = None
    model: DiffusionModel = DiffusionModel.IC
    strategy: BlockKind = BlockKind.NODE
    prob_model: ProbModel = ProbModel.TR
    seed_spec: str = "random:10"
    extract: Optional[int] = None
    prob_seed: Optional[int] = None
    theta: int = 10_000
    mcs_rounds: int = 10_000
    eval_rounds: int = 100_000
    eval_mode: str = "auto"
    master_seed: int = 0
    repeats: int = 5
    time_limit: Optional[float] = 86_400.0
    workers: int = 1
    repeat_workers: int = 1
    max_uncertain: int = 25
    max_combinations: int = 1_000_000
    exact_estimator: str = "exact"
    top_up: bool = False
    common_random_numbers: bool = True
    # sweep axes for run_sweep; empty means the single theta / seed_spec above
    thetas: Tuple[int, ...] = ()
    seed_sweep: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(
                f"unknown algorithm {self.algorithm!r}; choose from {', '.join(ALGORITHMS)}"
            )
        if (self.dataset is None) == (self.synthetic is None):
            raise ConfigError("give exactly one of an input file and a synthetic graph size")
        if not self.budgets or any(b < 0 for b in self.budgets):
            raise ConfigError("budgets must be a non-empty list of non-negative integers")
        for name in ("theta", "mcs_rounds", "eval_rounds", "repeats", "workers", "repeat_workers"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be at least 1")
        if self.eval_mode not in ("auto", "exact", "mcs"):
            raise ConfigError(f"unknown evaluation mode {self.eval_mode!r}")
        if self.model is DiffusionModel.LT and self.prob_model is ProbModel.TR:
            raise ConfigError("the LT model needs WC or explicit probabilities")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ConfigError("time limit must be positive")
        if any(t < 1 for t in self.thetas):
            raise ConfigError("swept theta values must be at least 1")

    @property
    def dataset_name(self) -> str:
        if self.dataset is not None:
            return self.dataset.name
        n, m = self.synthetic  # type: ignore[misc]
        return f"synthetic-{n}-{m}"

    @classmethod
    def from_manager(cls, cfg: ConfigManager) -> "RunConfig":
        def enum(kind, key: str, default: str):
            value = cfg.get(key, default)
            try:
                return kind(str(value).lower())
            except ValueError:
                raise ConfigError(f"invalid value for {key}: {value!r}") from None

        prob_model = enum(ProbModel, "dataset.prob", "tr")
        seed_spec = str(cfg.get("dataset.seeds", "random:10"))
        path = cfg.get("dataset.path")
        dataset = None
        if path is not None:
            dataset = DatasetSpec(
                path=Path(path),
                directed=bool(cfg.get("dataset.directed", True)),
                prob_model=prob_model,
                seed_spec=seed_spec,
            )
        synthetic = cfg.get("dataset.synthetic")
        if synthetic is not None:
            synthetic = _pair(synthetic)

        extract = cfg.get("dataset.extract")
        prob_seed = cfg.get("dataset.prob_seed")
        budgets = cfg.get("run.budgets", [1])
        if isinstance(budgets, (int, str)):
            budgets = _ints(budgets)
        thetas = cfg.get("sweep.thetas", [])
        if isinstance(thetas, (int, str)):
            thetas = _ints(thetas)
        seed_sweep = cfg.get("sweep.seeds", [])
        if isinstance(seed_sweep, str):
            seed_sweep = [seed_sweep]
        try:
            return cls(
                algorithm=str(cfg.require("run.algorithm")).lower(),
                budgets=tuple(int(b) for b in budgets),
                dataset=dataset,
                synthetic=synthetic,
                model=enum(DiffusionModel, "run.model", "ic"),
                strategy=enum(BlockKind, "run.strategy", "node"),
                prob_model=prob_model,
                seed_spec=seed_spec,
                extract=None if extract is None else int(extract),
                prob_seed=None if prob_seed is None else int(prob_seed),
                theta=int(cfg.require("estimation.theta")),
                mcs_rounds=int(cfg.require("estimation.mcs_rounds")),
                eval_rounds=int(cfg.require("evaluation.rounds")),
                eval_mode=str(cfg.require("evaluation.mode")),
                master_seed=int(cfg.require("run.master_seed")),
                repeats=int(cfg.require("run.repeats")),
                time_limit=cfg.get("run.time_limit"),
                workers=int(cfg.require("estimation.workers")),
                repeat_workers=int(cfg.require("run.workers")),
                max_uncertain=int(cfg.require("exact.max_uncertain")),
                max_combinations=int(cfg.require("exact.max_combinations")),
                exact_estimator=str(cfg.get("exact.estimator", "exact")),
                top_up=bool(cfg.require("replace.top_up")),
                common_random_numbers=bool(cfg.require("baseline.common_random_numbers")),
                thetas=tuple(int(t) for t in thetas),
                seed_sweep=tuple(str(s) for s in seed_sweep),
            )
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from exc

    def echo(self) -> Dict[str, Any]:
        """JSON-friendly copy of the configuration for run records."""
        data = asdict(self)
        data["dataset"] = self.dataset_name
        # worker counts do not affect results
        data.pop("workers")
        data.pop("repeat_workers")
        data["budgets"] = list(self.budgets)
        data["thetas"] = list(self.thetas)
        data["seed_sweep"] = list(self.seed_sweep)
        data["synthetic"] = list(self.synthetic) if self.synthetic else None
        for key in ("model", "strategy", "prob_model"):
            data[key] = getattr(self, key).value
        return data


def _ints(value: int | str) -> Tuple[int, ...]:
    if isinstance(value, int):
        return (value,)
    try:
        return tuple(int(part) for part in value.split(",") if part.strip())
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {value!r}") from None


def _pair(value: Any) -> Tuple[int, int]:
    parts = _ints(value) if isinstance(value, str) else tuple(int(v) for v in value)
    if len(parts) != 2 or parts[0] < 1 or parts[1] < 0:
        raise ConfigError(f"synthetic graph size must be N,M; got {value!r}")
    return parts[0], parts[1]
