"""Packing-number upper bounds: volume comparison and the quotient-space cap."""
import math
from typing import List, Optional

import numpy as np

from ..errors import InputError
from ..norms import lp_norm


def log_volume_packing_cap(n: int, alpha: float, eps: float) -> float:
    """n·(log α + log(1 + 2/ε))"""
    if n < 1 or alpha < 1 or eps <= 0:
        raise InputError(f"need n >= 1, α >= 1, ε > 0; got n={n}, α={alpha}, ε={eps}")
    return n * (math.log(alpha) + math.log1p(2.0 / eps))


def volume_packing_cap(n: int, alpha: float, eps: float) -> float:
    """α^n(1+2/ε)^n bounds the ε-packing number of a unit ball in n dimensions"""
    log_cap = log_volume_packing_cap(n, alpha, eps)
    try:
        return math.exp(log_cap)
    except OverflowError:
        return math.inf


def quotient_packing_cap(
    m: int,
    alpha: float,
    beta: float,
    radius: float,
    eps: float,
    c: Optional[float] = None,
) -> float:
    """m·log(α + 2cα·radius/ε), with c = αβ unless given.

    Caps log P(W, ε) for structured-sparse W when the Gelfand width is
    below the null-space threshold.
    """
    if m < 1 or eps <= 0:
        raise InputError(f"need m >= 1 and ε > 0, got m={m}, ε={eps}")
    if c is None:
        c = alpha * beta
    return m * math.log(alpha + 2.0 * c * alpha * radius / eps)


def greedy_epsilon_packing(points: np.ndarray, eps: float, p: float = 2.0) -> List[int]:
    """Indices of a maximal subset at pairwise ℓ_p distance >= ε, scanned in order"""
    points = np.asarray(points, dtype=float)
    kept: List[int] = []
    for idx, point in enumerate(points):
        if kept and lp_norm(points[kept] - point, p, axis=1).min() < eps:
            continue
        kept.append(idx)
    return kept
