"""(2s,2t)-sparse 0/1 packings with verified distance and radius certificates."""
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional

import numpy as np

from ..errors import ConstructiveFailure, InputError
from ..models import ExponentPair, MixedArray, MixedShape, SupportPattern
from ..norms import lp_norm, mixed_norm
from .codes import gv_code
from .families import SetFamily, build_set_family, default_family_size
from .pairs import EXHAUSTIVE_LIMIT, SAMPLE_PAIRS, pairwise_min

logger = logging.getLogger(__name__)

# vectors re-normed through mixed_norm and checked for sparsity
RADIUS_SAMPLES = 256


def radius_sample_indices(count: int, seed=0, size: int = RADIUS_SAMPLES) -> np.ndarray:
    """Indices of the vectors whose radius is measured directly.

    All of them when ``count <= size``; otherwise a seeded sorted sample
    spread over the whole family that always holds the first and last index.
    """
    if count <= size:
        return np.arange(count)
    rng = np.random.default_rng(seed)
    middle = rng.choice(count - 2, size=size - 2, replace=False) + 1
    return np.concatenate(([0], np.sort(middle), [count - 1]))


@dataclass
class PackingCertificate:
    """Measured cardinality, separation and radius of a packing"""
    cardinality: int
    cardinality_floor: float
    min_distance: float
    distance_floor: float
    max_radius: float
    radius_cap: float
    exhaustive: bool

    @property
    def holds(self) -> bool:
        return (
            self.cardinality >= self.cardinality_floor * (1 - 1e-12)
            and self.min_distance >= self.distance_floor * (1 - 1e-12)
            and self.max_radius <= self.radius_cap * (1 + 1e-12)
        )


@dataclass
class PackingFamily:
    """(2s,2t)-sparse 0/1 vectors stored by rows and inner-family codes.

    Vector k has ones exactly at rows[k, i] × inner_family.members[codes[k, i]]
    for i < 2s.
    """
    shape: MixedShape
    outer_s: int
    inner_t: int
    rows: np.ndarray
    codes: np.ndarray
    inner_family: SetFamily
    radius_in: ExponentPair
    measured_in: ExponentPair
    radius_cap: float
    distance_floor: float
    cardinality_floor: float
    certificate: Optional[PackingCertificate] = field(default=None)

    def __len__(self) -> int:
        return len(self.rows)

    def vector(self, k: int) -> MixedArray:
        values = np.zeros(self.shape.as_tuple())
        for row, code in zip(self.rows[k], self.codes[k]):
            values[row, list(self.inner_family.members[code])] = 1.0
        return MixedArray(self.shape, values)

    @property
    def vectors(self) -> List[MixedArray]:
        return [self.vector(k) for k in range(len(self))]

    def distances(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        """ℓ_r(ℓ_u) distances between vectors i[k] and j[k]"""
        two_t = 2 * self.inner_t
        overlap = self.overlap
        rows_a, rows_b = self.rows[i], self.rows[j]
        codes_a, codes_b = self.codes[i], self.codes[j]
        match = rows_a[:, :, None] == rows_b[:, None, :]
        inter = overlap[codes_a[:, :, None], codes_b[:, None, :]]
        sym_diff = np.where(match, 2 * two_t - 2 * inter, 0).sum(axis=2)
        count_a = np.where(match.any(axis=2), sym_diff, two_t)
        count_b = np.where(match.any(axis=1), 0, two_t)
        counts = np.concatenate([count_a, count_b], axis=1).astype(float)
        inner = np.where(counts > 0, counts ** self.measured_in.inv_q, 0.0)
        return lp_norm(inner, self.measured_in.p, axis=1)

    @cached_property
    def overlap(self) -> np.ndarray:
        """Pairwise intersection sizes of the inner family"""
        return self.inner_family.intersection_sizes()


def verify_packing(
    family: PackingFamily,
    seed=0,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
    sample_pairs: int = SAMPLE_PAIRS,
) -> PackingCertificate:
    """Measure and check cardinality, pairwise distance and radius.

    Raises:
        ConstructiveFailure: a certificate does not hold
    """
    s2, t2 = 2 * family.outer_s, 2 * family.inner_t
    for k in range(len(family)):
        if len(set(family.rows[k].tolist())) != s2:
            raise ConstructiveFailure(f"vector {k} does not use {s2} distinct rows", best=family)
    if any(len(m) != t2 for m in family.inner_family.members):
        raise ConstructiveFailure(f"inner family members must have {t2} elements", best=family)

    row_value = float(t2) ** family.radius_in.inv_q
    radius = float(lp_norm(np.full(s2, row_value), family.radius_in.p))
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    radius_seed, pair_seed = seed.spawn(2)
    for k in radius_sample_indices(len(family), seed=radius_seed):
        k = int(k)
        vec = family.vector(k)
        if not SupportPattern.from_array(vec).is_sparse(s2, t2):
            raise ConstructiveFailure(f"vector {k} is not ({s2},{t2})-sparse", best=family)
        radius = max(radius, mixed_norm(vec, family.radius_in))

    min_distance, exhaustive = pairwise_min(
        len(family),
        family.distances,
        seed=pair_seed,
        exhaustive_limit=exhaustive_limit,
        sample_pairs=sample_pairs,
    )
    certificate = PackingCertificate(
        cardinality=len(family),
        cardinality_floor=family.cardinality_floor,
        min_distance=min_distance,
        distance_floor=family.distance_floor,
        max_radius=radius,
        radius_cap=family.radius_cap,
        exhaustive=exhaustive,
    )
    if not certificate.holds:
        raise ConstructiveFailure(f"packing certificate failed: {certificate}", best=family)
    family.certificate = certificate
    return certificate


def build_sparse_packing(
    b: int,
    d: int,
    s: int,
    t: int,
    norm_in: ExponentPair = ExponentPair(1, 2),
    measured_in: ExponentPair = ExponentPair(2, 2),
    seed=0,
    code_size: Optional[int] = None,
    max_size: Optional[int] = None,
) -> PackingFamily:
    """Three-stage (2s,2t)-sparse packing of the unit vectors' supports.

    1. inner family A of 2t-subsets of [d] with pairwise intersection < t
    2. greedy GV code over A^{2s} with distance s
    3. outer family of 2s-subsets of [b] with pairwise intersection < s

    Every outer set combined with every codeword gives one 0/1 vector.
    The code is cut at ``code_size`` words, by default
    ceil((d/8t)^{st}/4^s), which with the outer family already reaches
    |W| >= (b/32s)^s·(d/8t)^{st}. ``max_size`` truncates W itself.
    """
    if b < 8 or d < 8:
        raise InputError(f"build_sparse_packing needs b, d >= 8, got b={b}, d={d}")
    if not 1 <= s <= b // 8 or not 1 <= t <= d // 8:
        raise InputError(f"need 1 <= s <= b/8 and 1 <= t <= d/8, got s={s}, t={t} for b={b}, d={d}")
    shape = MixedShape(b, d)
    inner_seed, code_seed, outer_seed, verify_seed = np.random.SeedSequence(seed).spawn(4)

    inner = build_set_family(d, t, target_size=max(2, default_family_size(d, t)), seed=inner_seed)
    theta = len(inner)
    if code_size is None:
        code_size = max(1, math.ceil((d / (8.0 * t)) ** (s * t) / 4.0 ** s))
    code = gv_code(theta, 2 * s, s, seed=code_seed, max_size=code_size)
    outer = build_set_family(b, s, seed=outer_seed)

    outer_rows = np.array(outer.members, dtype=np.int64)
    n_words = len(code)
    rows = np.repeat(outer_rows, n_words, axis=0)
    codes = np.tile(code.words, (len(outer_rows), 1))
    if max_size is not None:
        rows, codes = rows[:max_size], codes[:max_size]

    family = PackingFamily(
        shape=shape,
        outer_s=s,
        inner_t=t,
        rows=rows,
        codes=codes,
        inner_family=inner,
        radius_in=norm_in,
        measured_in=measured_in,
        radius_cap=(2.0 * s) ** norm_in.inv_p * (2.0 * t) ** norm_in.inv_q,
        distance_floor=float(s) ** measured_in.inv_p * (2.0 * t) ** measured_in.inv_q,
        cardinality_floor=(b / (32.0 * s)) ** s * (d / (8.0 * t)) ** (s * t),
    )
    certificate = verify_packing(family, seed=verify_seed)
    logger.info(
        f"[packing b={b} d={d} s={s} t={t}] |W|={len(family)} "
        f"(下界 {family.cardinality_floor:.4g}), 最小距离 {certificate.min_distance:.6g}, "
        f"{'穷举' if certificate.exhaustive else '抽样'}校验通过"
    )
    return family
