"""Families of equal-size subsets with bounded pairwise intersections."""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ..errors import ConstructiveFailure, InputError

logger = logging.getLogger(__name__)

DEFAULT_MAX_ATTEMPTS = 200_000


@dataclass
class SetFamily:
    """Subsets of [n] of size 2ℓ whose pairwise intersections have < ℓ elements"""
    ground_size: int
    member_size: int
    members: List[Tuple[int, ...]]
    intersection_cap: int

    def __len__(self) -> int:
        return len(self.members)

    def incidence(self) -> np.ndarray:
        """0/1 matrix with one row per member"""
        out = np.zeros((len(self.members), self.ground_size), dtype=np.int64)
        for k, member in enumerate(self.members):
            out[k, list(member)] = 1
        return out

    def intersection_sizes(self) -> np.ndarray:
        inc = self.incidence()
        return inc @ inc.T

    def verify(self) -> None:
        """Raise if a member has the wrong size or two members overlap too much"""
        for member in self.members:
            if len(set(member)) != self.member_size:
                raise ConstructiveFailure(f"member {member} does not have {self.member_size} elements", best=self)
            if min(member) < 0 or max(member) >= self.ground_size:
                raise ConstructiveFailure(f"member {member} leaves [0, {self.ground_size})", best=self)
        sizes = self.intersection_sizes()
        np.fill_diagonal(sizes, 0)
        if sizes.size and sizes.max() >= self.intersection_cap:
            raise ConstructiveFailure(
                f"two members share {sizes.max()} >= {self.intersection_cap} elements", best=self
            )


def default_family_size(n: int, ell: int) -> int:
    """ceil((n/(8ℓ))^ℓ), the size the counting argument guarantees"""
    return max(1, math.ceil((n / (8.0 * ell)) ** ell))


def build_set_family(
    n: int,
    ell: int,
    target_size: Optional[int] = None,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    seed=0,
) -> SetFamily:
    """Rejection-sample 2ℓ-subsets of [n] with pairwise intersection < ℓ.

    Args:
        n: ground set size
        ell: half the member size, also the intersection cap
        target_size: stop once this many members are accepted; defaults to
            ceil((n/(8ℓ))^ℓ)
        max_attempts: candidate draws before giving up
        seed: anything ``numpy.random.default_rng`` accepts

    Raises:
        ConstructiveFailure: target not reached; ``best`` holds the partial family
    """
    if ell < 1 or 2 * ell > n:
        raise InputError(f"need 1 <= ℓ and 2ℓ <= n, got n={n}, ℓ={ell}")
    if target_size is None:
        target_size = default_family_size(n, ell)
    if target_size < 1:
        raise InputError(f"target_size must be >= 1, got {target_size}")

    rng = np.random.default_rng(seed)
    incidence = np.zeros((target_size, n), dtype=np.int64)
    members: List[Tuple[int, ...]] = []
    attempts = 0
    while len(members) < target_size and attempts < max_attempts:
        attempts += 1
        candidate = rng.choice(n, size=2 * ell, replace=False)
        row = np.zeros(n, dtype=np.int64)
        row[candidate] = 1
        count = len(members)
        if count and (incidence[:count] @ row).max() >= ell:
            continue
        incidence[count] = row
        members.append(tuple(sorted(candidate.tolist())))

    family = SetFamily(
        ground_size=n,
        member_size=2 * ell,
        members=members,
        intersection_cap=ell,
    )
    if len(members) < target_size:
        raise ConstructiveFailure(
            f"only {len(members)} of {target_size} subsets after {attempts} attempts (n={n}, ℓ={ell})",
            best=family,
        )
    family.verify()
    logger.debug(f"[family n={n} ℓ={ell}] {len(members)} 个子集，尝试 {attempts} 次")
    return family
