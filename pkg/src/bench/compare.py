from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional

import numpy as np
from scipy import stats as sps

from src.bench.runner import RunRecord


@dataclass(frozen=True)
class Comparison:
    """Paired comparison of two runs at one budget.

    ``ratio`` is reference mean residual over the compared run's mean: 1.0
    means the run matches the reference, lower is worse when the reference
    is the exhaustive optimum.
    """

    budget: int
    mean: float
    reference_mean: float
    mean_difference: float
    statistic: Optional[float]
    p_value: Optional[float]
    ratio: float

    def as_dict(self) -> Dict[str, Any]:
        return {
            k: (None if isinstance(v, float) and not math.isfinite(v) else v)
            for k, v in asdict(self).items()
        }


def _paired_test(a: np.ndarray, b: np.ndarray) -> tuple[Optional[float], Optional[float]]:
    if len(a) < 2:
        return None, None
    diff = a - b
    if np.allclose(diff, diff[0]):
        # ttest_rel is undefined for constant differences; a nonzero constant
        # shift has no finite statistic
        return (0.0, 1.0) if diff[0] == 0 else (None, 0.0)
    result = sps.ttest_rel(a, b)
    return float(result.statistic), float(result.pvalue)


def compare_runs(record: RunRecord, reference: RunRecord) -> List[Comparison]:
    """Compare per-repeat residual spreads at every budget both runs cover."""
    out: List[Comparison] = []
    for b in record.results:
        if b not in reference.results:
            continue
        a = np.asarray(record.residuals(b), dtype=float)
        r = np.asarray(reference.residuals(b), dtype=float)
        k = min(len(a), len(r))
        a, r = a[:k], r[:k]
        statistic, p_value = _paired_test(a, r)
        mean_a, mean_r = float(a.mean()), float(r.mean())
        if mean_a == mean_r:
            ratio = 1.0
        else:
            ratio = mean_r / mean_a if mean_a else float("inf")
        out.append(Comparison(b, mean_a, mean_r, mean_a - mean_r, statistic, p_value, ratio))
    return out
