"""Seed splitting and order-preserving thread pools.

Every random stream is ``SeedSequence(seed, spawn_key=key)``; the key names
the work item (trial index, grid cell, ...), so results never depend on
which worker ran what.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")

CHUNK_SIZE = 256


def trial_rng(seed: int, *key: int) -> np.random.Generator:
    """Generator for work item ``key`` under the run seed"""
    return np.random.default_rng(
        np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    )


def run_ordered(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> List[R]:
    """map(fn, items) on up to ``threads`` workers, results in input order"""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def chunked(count: int, size: int = CHUNK_SIZE) -> List[range]:
    return [range(start, min(start + size, count)) for start in range(0, count, size)]


def mean_and_stderr(values: Sequence[float]) -> Tuple[float, Optional[float]]:
    """Exactly rounded mean and standard error; stderr is None for one value"""
    count = len(values)
    mean = math.fsum(values) / count
    if count < 2:
        return mean, None
    variance = math.fsum((v - mean) ** 2 for v in values) / (count - 1)
    return mean, math.sqrt(variance / count)
