from __future__ import annotations

import math


def chernoff_theta(l: float, epsilon: float, n: int, opt_lower_bound: float) -> int:
    """Worlds needed so every decrease estimate is within ε·OPT w.p. ≥ 1 - n^-l.

    θ = ceil(l (2 + ε) n ln n / (ε² OPT)), natural logarithm.
    """
    if l <= 0 or epsilon <= 0 or opt_lower_bound <= 0:
        raise ValueError("l, epsilon and the OPT lower bound must be positive")
    if n < 2:
        raise ValueError("n must be at least 2")
    return math.ceil(l * (2 + epsilon) * n * math.log(n) / (epsilon**2 * opt_lower_bound))
