from __future__ import annotations

from typing import Optional

from src.decrease.estimators import DEFAULT_THETA
from src.graphs.prob_graph import BlockKind
from src.minimizers.advanced import AdvancedGreedy
from src.minimizers.base import Minimizer
from src.minimizers.baseline import DEFAULT_MCS_ROUNDS, BaselineGreedy
from src.minimizers.exact import DEFAULT_MAX_COMBINATIONS, ExactSearch
from src.minimizers.heuristics import OutDegreeBlocker, RandomBlocker
from src.minimizers.replace import GreedyReplace
from src.utils.rng import RngStream
from src.utils.timing import Deadline

ALGORITHMS = ("exact", "rand", "outdeg", "bg", "ag", "gr", "outnb")


def create_minimizer(
    name: str,
    kind: BlockKind | str = BlockKind.NODE,
    theta: int = DEFAULT_THETA,
    mcs_rounds: int = DEFAULT_MCS_ROUNDS,
    stream: Optional[RngStream] = None,
    deadline: Optional[Deadline] = None,
    workers: int = 1,
    common_random_numbers: bool = True,
    top_up: bool = False,
    exact_estimator: str = "exact",
    max_combinations: int = DEFAULT_MAX_COMBINATIONS,
    **kwargs,
) -> Minimizer:
    common = dict(kind=kind, stream=stream, deadline=deadline, workers=workers, **kwargs)
    n = name.lower()
    if n == "exact":
        return ExactSearch(
            estimator=exact_estimator,
            rounds=mcs_rounds,
            max_combinations=max_combinations,
            **common,
        )
    if n == "rand":
        return RandomBlocker(**common)
    if n == "outdeg":
        return OutDegreeBlocker(**common)
    if n == "bg":
        return BaselineGreedy(
            rounds=mcs_rounds, common_random_numbers=common_random_numbers, **common
        )
    if n == "ag":
        return AdvancedGreedy(theta=theta, **common)
    if n == "gr":
        return GreedyReplace(theta=theta, top_up=top_up, **common)
    if n == "outnb":
        return GreedyReplace(theta=theta, replace=False, **common)
    raise ValueError(f"Unknown algorithm: {name}")
