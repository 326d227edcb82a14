import itertools
import math

import numpy as np
import pytest

from mixed_gelfand.errors import InputError
from mixed_gelfand.models import ExponentPair, MixedArray, MixedShape, SparsityMode, SupportPattern
from mixed_gelfand.norms import (
    inner_threshold,
    lp_norm,
    mixed_norm,
    outer_threshold,
    power_exponent,
    quasi_norm_constant,
    random_structured_array,
    sigma_inner,
    sigma_outer,
    split_constant,
)

EXPONENTS = [0.4, 0.7, 1.0, 1.5, 2.0, math.inf]


def naive_mixed_norm(values, p, q):
    rows = []
    for row in values:
        if math.isinf(q):
            rows.append(max(abs(v) for v in row))
        else:
            rows.append(math.fsum(abs(v) ** q for v in row) ** (1.0 / q))
    if math.isinf(p):
        return max(rows)
    return math.fsum(r ** p for r in rows) ** (1.0 / p)


def test_mixed_norm_all_ones():
    x = MixedArray.from_values(np.ones((2, 3)))
    assert mixed_norm(x, ExponentPair(1, 2)) == pytest.approx(2 * math.sqrt(3), rel=1e-14)


@pytest.mark.parametrize("p,q", [(0.3, 2.0), (1.0, 1.0), (2.0, math.inf), (math.inf, 0.5)])
def test_mixed_norm_single_entry(p, q):
    values = np.zeros((3, 4))
    values[1, 2] = 5.0
    assert mixed_norm(values, ExponentPair(p, q)) == pytest.approx(5.0, rel=1e-14)


def test_mixed_norm_matches_naive_sum():
    values = np.random.default_rng(7).standard_normal((4, 4))
    expected = naive_mixed_norm(values.tolist(), 0.5, 1.5)
    assert mixed_norm(values, ExponentPair(0.5, 1.5)) == pytest.approx(expected, rel=1e-12)


def test_mixed_norm_zero_iff_zero():
    assert mixed_norm(np.zeros((3, 3)), ExponentPair(0.5, 2)) == 0.0
    assert mixed_norm(np.eye(3) * 1e-300, ExponentPair(0.5, 2)) > 0.0


def test_lp_norm_small_exponent_stays_finite():
    values = np.full(10_000, 1e-200)
    assert lp_norm(values, 0.1) == pytest.approx(1e-200 * 10_000 ** 10, rel=1e-9)


def test_non_finite_entries_rejected():
    with pytest.raises(InputError):
        MixedArray.from_values([[1.0, math.nan]])
    with pytest.raises(InputError):
        ExponentPair(0, 1)


def test_mixed_array_copies_input():
    source = np.ones((2, 2))
    x = MixedArray.from_values(source)
    source[0, 0] = 7.0
    assert x.values[0, 0] == 1.0
    assert source.flags.writeable


@pytest.mark.parametrize(
    "p,q,expected",
    [(1, 1, 1.0), (0.5, 2, 2.0), (2, 2, 1.0), (2, 0.5, 2.0), (math.inf, math.inf, 1.0)],
)
def test_quasi_norm_constant(p, q, expected):
    assert quasi_norm_constant(ExponentPair(p, q)) == expected


def test_quasi_triangle_and_power_inequality():
    rng = np.random.default_rng(11)
    for p, q in itertools.product(EXPONENTS, repeat=2):
        e = ExponentPair(p, q)
        alpha = quasi_norm_constant(e)
        rho = power_exponent(e)
        for _ in range(50):
            x = rng.standard_normal((4, 3)) * rng.exponential(size=(4, 1))
            y = rng.standard_normal((4, 3))
            total = mixed_norm(x + y, e)
            nx, ny = mixed_norm(x, e), mixed_norm(y, e)
            assert total <= alpha * (nx + ny) * (1 + 1e-12)
            assert total ** rho <= (nx ** rho + ny ** rho) * (1 + 1e-12)


def test_split_constant_defaults_to_two():
    assert split_constant(ExponentPair(1, 1)) == 2.0


@pytest.mark.parametrize("p,q,expected", [(1, 1, 1.0), (math.inf, math.inf, 2.0), (0.5, 0.5, 1.0)])
def test_split_constant_tight_values(p, q, expected):
    assert split_constant(ExponentPair(p, q), tight=True) == pytest.approx(expected)


def test_split_constant_tight_survives_random_splits():
    rng = np.random.default_rng(3)
    for p, q in itertools.product(EXPONENTS, repeat=2):
        e = ExponentPair(p, q)
        beta = split_constant(e, tight=True)
        assert 1.0 <= beta <= 2.0
        for _ in range(40):
            x = rng.standard_normal((5, 4))
            mask = rng.random((5, 4)) < 0.5
            left = mixed_norm(np.where(mask, x, 0.0), e)
            right = mixed_norm(np.where(mask, 0.0, x), e)
            assert left + right <= beta * mixed_norm(x, e) * (1 + 1e-12)


def test_outer_threshold_examples():
    x = np.array([[3.0, 0.0], [0.0, 2.0], [1.0, 0.0]])
    kept = outer_threshold(x, 1).values
    assert np.array_equal(kept, [[3.0, 0.0], [0.0, 0.0], [0.0, 0.0]])
    assert np.array_equal(outer_threshold(x, 3).values, x)
    assert not outer_threshold(x, 0).values.any()


def test_outer_threshold_ties_keep_lowest_rows():
    x = np.ones((4, 2))
    kept = outer_threshold(x, 2).values
    assert kept[:2].all() and not kept[2:].any()


def test_inner_threshold_examples():
    assert np.array_equal(inner_threshold([[1.0, -4.0, 2.0]], 1).values, [[0.0, -4.0, 0.0]])
    x = np.arange(6.0).reshape(2, 3)
    assert np.array_equal(inner_threshold(x, 3).values, x)
    assert not inner_threshold(x, 0).values.any()
    assert np.array_equal(inner_threshold([[2.0, 2.0, 1.0]], 1).values, [[2.0, 0.0, 0.0]])


def test_threshold_range_errors():
    with pytest.raises(InputError):
        outer_threshold(np.ones((2, 2)), 3)
    with pytest.raises(InputError):
        inner_threshold(np.ones((2, 2)), -1)


def test_sigma_examples():
    x = np.array([[3.0, 0.0], [0.0, 2.0], [1.0, 0.0]])
    e = ExponentPair(1, 2)
    assert sigma_outer(x, 1, e) == pytest.approx(3.0)
    assert sigma_outer(x, 0, e) == pytest.approx(mixed_norm(x, e))
    assert sigma_outer(x, 3, e) == 0.0
    y = np.array([[1.0, 2.0, 3.0], [0.0, 0.0, 4.0]])
    assert sigma_inner(y, 1, ExponentPair(2, 1)) == pytest.approx(3.0)
    assert sigma_inner(y, 3, ExponentPair(2, 1)) == 0.0


def brute_sigma_outer(x, s, e):
    b = x.shape[0]
    best = math.inf
    for rows in itertools.combinations(range(b), s):
        rest = x.copy()
        rest[list(rows)] = 0.0
        best = min(best, naive_mixed_norm(rest.tolist(), e.p, e.q))
    return best


def brute_sigma_inner(x, t, e):
    b, d = x.shape
    per_row = []
    for i in range(b):
        options = []
        for cols in itertools.combinations(range(d), t):
            rest = x[i].copy()
            rest[list(cols)] = 0.0
            options.append(naive_mixed_norm([rest.tolist()], 1.0, e.q))
        per_row.append(min(options))
    return naive_mixed_norm([[r] for r in per_row], e.p, 1.0)


def test_sigma_matches_brute_force():
    rng = np.random.default_rng(5)
    for _ in range(100):
        b, d = rng.integers(1, 6, size=2)
        x = rng.standard_normal((b, d))
        e = ExponentPair(*rng.choice([0.5, 1.0, 2.0], size=2))
        for s in range(b + 1):
            assert sigma_outer(x, s, e) == pytest.approx(brute_sigma_outer(x, s, e), rel=1e-12, abs=1e-12)
        for t in range(d + 1):
            assert sigma_inner(x, t, e) == pytest.approx(brute_sigma_inner(x, t, e), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize(
    "p,r,q",
    [(0.5, 1, 2), (0.5, 2, 1), (1, 2, 2), (1, math.inf, 1),
     (0.3, 1, 0.5), (2, math.inf, 2), (1, 1.5, math.inf), (0.5, math.inf, 0.7)],
)
def test_stechkin_outer(p, r, q):
    rng = np.random.default_rng(9)
    for _ in range(1000):
        x = rng.standard_normal((8, 6)) * rng.exponential(size=(8, 1))
        s = int(rng.integers(1, 9))
        assert sigma_outer(x, s, ExponentPair(r, q)) <= (
            s ** -(1 / p - 1 / r) * mixed_norm(x, ExponentPair(p, q)) * (1 + 1e-12)
        )


@pytest.mark.parametrize(
    "q,u,p",
    [(0.5, 1, 2), (1, 2, 1), (1, math.inf, 0.5), (0.5, 2, math.inf),
     (0.3, 1, 1), (2, math.inf, 2), (1, 1.5, 0.7), (0.7, math.inf, 1)],
)
def test_stechkin_inner(q, u, p):
    rng = np.random.default_rng(10)
    for _ in range(1000):
        x = rng.standard_normal((8, 6)) * rng.exponential(size=(1, 6))
        t = int(rng.integers(1, 7))
        assert sigma_inner(x, t, ExponentPair(p, u)) <= (
            t ** -(1 / q - 1 / u) * mixed_norm(x, ExponentPair(p, q)) * (1 + 1e-12)
        )


def test_thresholds_compose_to_structured_sparsity(rng):
    x = rng.standard_normal((6, 5))
    y = inner_threshold(outer_threshold(x, 2), 3)
    assert SupportPattern.from_array(y).is_sparse(2, 3)


@pytest.mark.parametrize(
    "mode,k,rows,per_row",
    [(SparsityMode.OUTER, 2, 2, 5), (SparsityMode.INNER, 2, 6, 2), (SparsityMode.MIXED, 3, 3, 2)],
)
def test_random_structured_array_support(rng, mode, k, rows, per_row):
    x = random_structured_array(MixedShape(6, 5), mode, k, rng, t=2)
    pattern = SupportPattern.from_array(x)
    assert pattern.outer_sparsity == rows
    assert pattern.inner_sparsity == per_row


def test_random_structured_array_plain_and_flat(rng):
    x = random_structured_array(MixedShape(4, 4), SparsityMode.PLAIN, 5, rng, flat=True)
    nonzero = x.values[x.values != 0]
    assert nonzero.size == 5
    assert set(np.abs(nonzero).tolist()) == {1.0}
