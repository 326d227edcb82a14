import math

import numpy as np
import pytest

from mixed_gelfand.errors import ConstructiveFailure, InputError
from mixed_gelfand.models import ExponentPair, SupportPattern
from mixed_gelfand.norms import mixed_norm
from mixed_gelfand.packing import (
    ScanOrder,
    build_set_family,
    build_sparse_packing,
    default_family_size,
    greedy_epsilon_packing,
    gv_bound,
    gv_code,
    hamming_ball_size,
    log_volume_packing_cap,
    pairwise_min,
    radius_sample_indices,
    quotient_packing_cap,
    volume_packing_cap,
)


def test_default_family_size():
    assert default_family_size(64, 2) == 16
    assert default_family_size(8, 1) == 1
    assert default_family_size(100, 1) == 13


def test_build_set_family_meets_target():
    family = build_set_family(64, 2, seed=3)
    assert len(family) == 16
    assert all(len(set(m)) == 4 for m in family.members)
    sizes = family.intersection_sizes()
    np.fill_diagonal(sizes, 0)
    assert sizes.max() < 2


def test_build_set_family_disjoint_pairs():
    family = build_set_family(16, 1, target_size=8, seed=0)
    covered = sorted(i for m in family.members for i in m)
    assert covered == list(range(16))


def test_build_set_family_is_deterministic():
    assert build_set_family(40, 2, seed=5).members == build_set_family(40, 2, seed=5).members


def test_build_set_family_errors():
    with pytest.raises(InputError):
        build_set_family(3, 2)
    with pytest.raises(ConstructiveFailure) as info:
        build_set_family(8, 1, target_size=5, max_attempts=2000)
    assert info.value.best is not None
    assert len(info.value.best) <= 4


@pytest.mark.parametrize(
    "theta,length,k,expected",
    [(2, 3, 1, 8), (2, 4, 2, 8), (3, 2, 2, 3)],
)
def test_gv_code_examples(theta, length, k, expected):
    code = gv_code(theta, length, k)
    assert len(code) == expected
    assert code.words.shape == (expected, length)


def test_gv_code_even_weight_lexicode():
    code = gv_code(2, 4, 2)
    assert all(int(w.sum()) % 2 == 0 for w in code.words)
    assert code.words[:2].tolist() == [[0, 0, 0, 0], [0, 0, 1, 1]]


@pytest.mark.parametrize("order", list(ScanOrder))
def test_gv_code_meets_gv_bound(order):
    for theta in (2, 3, 4, 5):
        for length in range(1, 6):
            for k in range(1, length + 1):
                code = gv_code(theta, length, k, seed=1, order=order)
                assert len(code) >= gv_bound(theta, length, k) * (1 - 1e-12)
                found, exhaustive = pairwise_min(
                    len(code), lambda i, j: (code.words[i] != code.words[j]).sum(axis=1)
                )
                assert exhaustive and found >= k


GV_SWEEP = [
    (theta, length)
    for theta in list(range(2, 11)) + [16, 31, 46, 100, 316, 1000, 100_000]
    for length in range(1, 17)
    if theta ** length <= 100_000
]


@pytest.mark.slow
@pytest.mark.parametrize("theta,length", GV_SWEEP)
def test_gv_code_meets_gv_bound_over_word_spaces(theta, length):
    for k in range(1, length + 1):
        code = gv_code(theta, length, k, seed=3)
        assert code.complete
        assert len(code) >= gv_bound(theta, length, k) * (1 - 1e-12)
        if len(code) <= 2000:
            words = code.words
            dist = (words[:, None, :] != words[None, :, :]).sum(axis=2)
            np.fill_diagonal(dist, length)
            assert dist.min() >= k


def test_gv_code_max_size_truncates():
    code = gv_code(16, 4, 2, max_size=16)
    assert len(code) == 16
    assert not code.complete


def test_gv_code_errors():
    with pytest.raises(InputError):
        gv_code(1, 3, 1)
    with pytest.raises(InputError):
        gv_code(2, 3, 4)
    with pytest.raises(InputError):
        gv_code(2, 3, 1, max_size=0)


def test_hamming_ball_size():
    assert hamming_ball_size(2, 4, 1) == 5
    assert hamming_ball_size(3, 2, 2) == 9
    assert gv_bound(2, 4, 2) == pytest.approx(16 / 5)


def test_sparse_packing_large():
    family = build_sparse_packing(64, 64, 2, 2, seed=0)
    certificate = family.certificate
    assert certificate.exhaustive
    assert certificate.holds
    assert certificate.cardinality >= 256
    assert certificate.min_distance >= 2 * math.sqrt(2) * (1 - 1e-12)
    assert certificate.max_radius <= 8 * (1 + 1e-12)


def test_sparse_packing_vectors_are_structured():
    family = build_sparse_packing(64, 64, 2, 2, seed=4)
    for k in (0, 17, len(family) - 1):
        vec = family.vector(k)
        assert SupportPattern.from_array(vec).is_sparse(4, 4)
        assert mixed_norm(vec, ExponentPair(1, 2)) == pytest.approx(8.0)
    first, second = family.vector(0), family.vector(1)
    direct = mixed_norm(first - second, ExponentPair(2, 2))
    assert family.distances(np.array([0]), np.array([1]))[0] == pytest.approx(direct)


SPARSE_SWEEP = [
    (b, d, s, t)
    for b in (8, 16, 32, 64)
    for d in (8, 16, 32, 64)
    for s in (1, 2, 4)
    for t in (1, 2, 4)
    if s <= b // 8 and t <= d // 8
]


@pytest.mark.slow
@pytest.mark.parametrize("b,d,s,t", SPARSE_SWEEP)
def test_sparse_packing_certificate_over_grid(b, d, s, t):
    certificate = build_sparse_packing(b, d, s, t, seed=5).certificate
    assert certificate.holds
    assert certificate.cardinality >= certificate.cardinality_floor
    assert certificate.min_distance >= certificate.distance_floor * (1 - 1e-12)
    assert certificate.max_radius <= certificate.radius_cap * (1 + 1e-12)


def test_radius_sample_indices_cover_large_families():
    picked = radius_sample_indices(10_000, seed=1)
    assert len(picked) == 256
    assert picked[0] == 0 and picked[-1] == 9_999
    assert len(set(picked.tolist())) == 256
    assert picked.max() > 64 and (picked[1:-1] > 1_000).sum() > 100
    assert np.array_equal(picked, radius_sample_indices(10_000, seed=1))
    assert radius_sample_indices(40, seed=1).tolist() == list(range(40))


def test_sparse_packing_small():
    family = build_sparse_packing(8, 8, 1, 1, seed=2)
    assert len(family) >= 1
    assert family.certificate.cardinality_floor == pytest.approx(0.25)
    assert family.certificate.holds


def test_sparse_packing_max_size():
    family = build_sparse_packing(64, 64, 2, 2, seed=0, max_size=300)
    assert len(family) <= 300


def test_sparse_packing_is_deterministic():
    a = build_sparse_packing(64, 64, 2, 2, seed=9)
    b = build_sparse_packing(64, 64, 2, 2, seed=9)
    assert np.array_equal(a.rows, b.rows)
    assert np.array_equal(a.codes, b.codes)


@pytest.mark.parametrize("b,d,s,t", [(16, 64, 3, 2), (8, 8, 1, 2), (4, 64, 1, 1)])
def test_sparse_packing_rejects_dense_parameters(b, d, s, t):
    with pytest.raises(InputError):
        build_sparse_packing(b, d, s, t)


def test_volume_caps():
    assert volume_packing_cap(2, 1.0, 1.0) == pytest.approx(9.0)
    assert log_volume_packing_cap(3, 2.0, 2.0) == pytest.approx(3 * math.log(4.0))
    assert volume_packing_cap(10 ** 6, 2.0, 1e-3) == math.inf
    with pytest.raises(InputError):
        volume_packing_cap(0, 1.0, 1.0)


def test_greedy_packing_below_volume_cap(rng):
    points = rng.standard_normal((2000, 2))
    points /= np.maximum(1.0, np.linalg.norm(points, axis=1))[:, None]
    eps = 0.5
    kept = greedy_epsilon_packing(points, eps)
    assert len(kept) <= volume_packing_cap(2, 1.0, eps)
    chosen = points[kept]
    gaps = np.linalg.norm(chosen[:, None, :] - chosen[None, :, :], axis=2)
    np.fill_diagonal(gaps, np.inf)
    assert gaps.min() >= eps


def test_quotient_packing_cap():
    assert quotient_packing_cap(2, 1.0, 1.0, 1.0, 2.0) == pytest.approx(2 * math.log(2.0))
    assert quotient_packing_cap(3, 2.0, 1.0, 1.0, 1.0, c=1.0) == pytest.approx(3 * math.log(6.0))
    with pytest.raises(InputError):
        quotient_packing_cap(0, 1.0, 1.0, 1.0, 1.0)


def test_pairwise_min_sampled():
    values = np.arange(50_000, dtype=float)
    found, exhaustive = pairwise_min(len(values), lambda i, j: np.abs(values[i] - values[j]),
                                     exhaustive_limit=100, sample_pairs=1000)
    assert not exhaustive
    assert found >= 1.0
