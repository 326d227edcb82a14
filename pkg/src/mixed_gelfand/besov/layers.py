"""Hyperbolic layer sizes of the sequence space on [0,1]^d.

Layer μ collects the multi-indices j with ||j||_1 = μ. For each j the
cubes Q_{j,k} = ×_i 2^{-j_i}[k_i - 1, k_i + 1] meeting [0,1]^d have
k_i ∈ {-1, ..., 2^{j_i} + 1}, so there are Π_i (2^{j_i} + 3) of them.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import prod
from typing import List, Tuple

from scipy.special import comb

from ..errors import InputError


def _check(mu: int, d: int) -> None:
    if int(mu) != mu or mu < 0 or int(d) != d or d < 1:
        raise InputError(f"need integers mu >= 0 and d >= 1, got mu={mu}, d={d}")


def layer_multiindex_count(mu: int, d: int) -> int:
    """C(μ+d-1, d-1)"""
    _check(mu, d)
    return int(comb(mu + d - 1, d - 1, exact=True))


def enumerate_layer(mu: int, d: int) -> List[Tuple[int, ...]]:
    """Multi-indices j ∈ N_0^d with ||j||_1 = μ in lexicographic order"""
    _check(mu, d)
    layer = []
    for bars in combinations(range(mu + d - 1), d - 1):
        edges = (-1,) + bars + (mu + d - 1,)
        layer.append(tuple(edges[i + 1] - edges[i] - 1 for i in range(d)))
    return sorted(layer)


@lru_cache(maxsize=4096)
def block_dimension(mu: int, d: int) -> int:
    """D_μ = Σ_{||j||_1 = μ} Π_i (2^{j_i} + 3), exact integer"""
    return sum(prod((1 << j) + 3 for j in index) for index in enumerate_layer(mu, d))


def _cubes_meeting_unit_interval(j: int) -> int:
    scale = Fraction(1, 1 << j)
    return sum(
        1
        for k in range(-4, (1 << j) + 5)
        if (k + 1) * scale >= 0 and (k - 1) * scale <= 1
    )


def layer_counts(n: int, d: int) -> List[int]:
    """Brute-force cube count per layer μ = 0..n, testing every (j, k)"""
    _check(n, d)
    counts = [0] * (n + 1)
    for index in product(range(n + 1), repeat=d):
        mu = sum(index)
        if mu <= n:
            counts[mu] += prod(_cubes_meeting_unit_interval(j) for j in index)
    return counts
