"""Pairwise minimum-distance verification shared by codes and packings."""
import logging
from typing import Callable, Tuple

import numpy as np

logger = logging.getLogger(__name__)

# 超过该数量改为抽样校验
EXHAUSTIVE_LIMIT = 10_000
SAMPLE_PAIRS = 100_000

PairDistance = Callable[[np.ndarray, np.ndarray], np.ndarray]


def pairwise_min(
    count: int,
    distance: PairDistance,
    seed=0,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
    sample_pairs: int = SAMPLE_PAIRS,
) -> Tuple[float, bool]:
    """Minimum of ``distance(i, j)`` over distinct pairs.

    ``distance`` maps two equal-length index arrays to distances. All pairs
    are checked when ``count <= exhaustive_limit``, otherwise
    ``sample_pairs`` seeded random pairs.

    Returns:
        (minimum distance, whether the check was exhaustive)
    """
    if count < 2:
        return float("inf"), True
    if count <= exhaustive_limit:
        best = float("inf")
        for i in range(count - 1):
            j = np.arange(i + 1, count)
            best = min(best, float(distance(np.full(j.shape, i), j).min()))
        return best, True

    logger.warning(f"[verify] 共 {count} 个元素，改为抽样 {sample_pairs} 对校验")
    rng = np.random.default_rng(seed)
    i = rng.integers(count, size=sample_pairs)
    j = rng.integers(count - 1, size=sample_pairs)
    j = j + (j >= i)
    return float(distance(i, j).min()), False
