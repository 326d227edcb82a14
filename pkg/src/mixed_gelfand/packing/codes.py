"""Greedy Gilbert–Varshamov codes over a finite alphabet."""
import itertools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ..errors import ConstructiveFailure, InputError
from .pairs import pairwise_min

logger = logging.getLogger(__name__)

# 词空间超过该规模时不再整体标记，改为窗口扫描
MAX_ENUMERATED_WORDS = 1 << 24
SCAN_WINDOW = 4096


class ScanOrder(str, Enum):
    LEXICOGRAPHIC = "lexicographic"
    SHUFFLED = "shuffled"


@dataclass
class ProductCode:
    """Words of length ℓ over {0,…,θ-1} at pairwise Hamming distance >= k"""
    length: int
    alphabet_size: int
    words: np.ndarray
    min_distance: int
    complete: bool = True

    def __len__(self) -> int:
        return len(self.words)

    def verify(self, seed=0) -> bool:
        """Check distances (exhaustive up to 10^4 words) and, for a complete
        greedy run, the GV size bound. Returns whether the distance check
        was exhaustive."""
        words = self.words
        found, exhaustive = pairwise_min(
            len(words),
            lambda i, j: (words[i] != words[j]).sum(axis=1),
            seed=seed,
        )
        if found < self.min_distance:
            raise ConstructiveFailure(f"two codewords at distance {found} < {self.min_distance}", best=self)
        if self.complete:
            bound = gv_bound(self.alphabet_size, self.length, self.min_distance)
            if len(words) < bound * (1 - 1e-12):
                raise ConstructiveFailure(f"greedy code has {len(words)} < GV bound {bound:.3f} words", best=self)
        return exhaustive


def hamming_ball_size(theta: int, length: int, radius: int) -> int:
    """Σ_{j<=radius} C(ℓ,j)(θ-1)^j"""
    return sum(math.comb(length, j) * (theta - 1) ** j for j in range(radius + 1))


def gv_bound(theta: int, length: int, k: int) -> float:
    """θ^ℓ / Σ_{j<k} C(ℓ,j)(θ-1)^j"""
    return theta ** length / hamming_ball_size(theta, length, k - 1)


def _ball_offsets(theta: int, length: int, radius: int) -> np.ndarray:
    """Additive shifts (mod θ) reaching every word within ``radius``"""
    rows = []
    for j in range(radius + 1):
        for positions in itertools.combinations(range(length), j):
            for shifts in itertools.product(range(1, theta), repeat=j):
                row = [0] * length
                for pos, shift in zip(positions, shifts):
                    row[pos] = shift
                rows.append(row)
    return np.array(rows, dtype=np.int64)


def _digits(index, radix: np.ndarray, theta: int) -> np.ndarray:
    return (np.asarray(index)[..., None] // radix) % theta


def _greedy_marking(theta, length, k, order, rng, max_size) -> np.ndarray:
    total = theta ** length
    radix = theta ** np.arange(length - 1, -1, -1, dtype=np.int64)
    offsets = _ball_offsets(theta, length, k - 1)
    covered = np.zeros(total, dtype=bool)
    scan = rng.permutation(total) if order == ScanOrder.SHUFFLED else None
    kept = []
    pos = 0
    while pos < total:
        window = np.arange(pos, min(pos + SCAN_WINDOW, total))
        indices = scan[window] if scan is not None else window
        free = np.flatnonzero(~covered[indices])
        if free.size == 0:
            pos = window[-1] + 1
            continue
        word = indices[free[0]]
        kept.append(word)
        if max_size is not None and len(kept) >= max_size:
            break
        neighbours = ((_digits(word, radix, theta) + offsets) % theta) @ radix
        covered[neighbours] = True
        pos = window[free[0]] + 1
    return _digits(np.array(kept, dtype=np.int64), radix, theta)


def _greedy_windowed(theta, length, k, max_size) -> np.ndarray:
    """Lexicographic greedy without enumerating the word space"""
    radix = theta ** np.arange(length - 1, -1, -1, dtype=np.int64)
    total = theta ** length
    kept = np.zeros((0, length), dtype=np.int64)
    pos = 0
    while len(kept) < max_size and pos < total:
        stop = min(pos + SCAN_WINDOW, total)
        cand = _digits(np.arange(pos, stop, dtype=np.int64), radix, theta)
        if len(kept):
            dist = (cand[:, None, :] != kept[None, :, :]).sum(axis=2).min(axis=1)
            alive = dist >= k
        else:
            alive = np.ones(len(cand), dtype=bool)
        while alive.any() and len(kept) < max_size:
            first = int(np.argmax(alive))
            word = cand[first]
            kept = np.vstack([kept, word])
            alive &= (cand != word).sum(axis=1) >= k
        pos = stop
    return kept


def gv_code(
    theta: int,
    length: int,
    k: int,
    seed=0,
    order: ScanOrder = ScanOrder.LEXICOGRAPHIC,
    max_size: Optional[int] = None,
) -> ProductCode:
    """Greedy code: scan words in a fixed order, keep a word iff it is at
    Hamming distance >= k from every word kept so far.

    A run to completion meets the Gilbert–Varshamov bound. ``max_size``
    stops the scan early; word spaces above 2^24 words need it and are
    scanned lexicographically in windows.
    """
    if theta < 2 or length < 1 or not 1 <= k <= length:
        raise InputError(f"gv_code needs θ >= 2 and 1 <= k <= ℓ, got θ={theta}, ℓ={length}, k={k}")
    if max_size is not None and max_size < 1:
        raise InputError(f"max_size must be >= 1, got {max_size}")
    order = ScanOrder(order)
    total = theta ** length
    rng = np.random.default_rng(seed)

    if total <= MAX_ENUMERATED_WORDS:
        words = _greedy_marking(theta, length, k, order, rng, max_size)
    else:
        if max_size is None or order != ScanOrder.LEXICOGRAPHIC:
            raise InputError(
                f"θ^ℓ = {total} words needs max_size and lexicographic order"
            )
        words = _greedy_windowed(theta, length, k, max_size)

    code = ProductCode(
        length=length,
        alphabet_size=theta,
        words=words,
        min_distance=k,
        complete=max_size is None or len(words) < max_size,
    )
    code.verify(seed=seed)
    logger.debug(f"[gv θ={theta} ℓ={length} k={k}] {len(code)} 个码字")
    return code
