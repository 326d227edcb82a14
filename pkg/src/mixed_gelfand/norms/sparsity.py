"""Thresholding operators and exact best-term approximation errors."""
import numpy as np

from ..errors import InputError
from ..models import ArrayInput, ExponentPair, MixedArray, MixedShape, SparsityMode, as_values
from .mixed import lp_norm, mixed_norm


def _check_count(name: str, value: int, upper: int) -> int:
    if int(value) != value or not 0 <= value <= upper:
        raise InputError(f"{name} must be an integer in [0, {upper}], got {value}")
    return int(value)


def outer_threshold(x: ArrayInput, s: int, inner_q: float = 2.0) -> MixedArray:
    """Keep the s rows with largest inner ℓ_q norm, zero the rest.

    Ties go to the lowest row index.
    """
    values = as_values(x)
    s = _check_count("s", s, values.shape[0])
    norms = lp_norm(values, inner_q, axis=1)
    keep = np.argsort(-norms, kind="stable")[:s]
    out = np.zeros_like(values)
    out[keep] = values[keep]
    return MixedArray.from_values(out)


def inner_threshold(x: ArrayInput, t: int) -> MixedArray:
    """Keep the t largest-magnitude entries of every row.

    Ties go to the lowest column index.
    """
    values = as_values(x)
    t = _check_count("t", t, values.shape[1])
    keep = np.argsort(-np.abs(values), axis=1, kind="stable")[:, :t]
    out = np.zeros_like(values)
    np.put_along_axis(out, keep, np.take_along_axis(values, keep, axis=1), axis=1)
    return MixedArray.from_values(out)


def sigma_outer(x: ArrayInput, s: int, e: ExponentPair) -> float:
    """Best s-outer-sparse approximation error in ℓ_p(ℓ_q)"""
    values = as_values(x)
    return mixed_norm(values - outer_threshold(values, s, e.q).values, e)


def sigma_inner(x: ArrayInput, t: int, e: ExponentPair) -> float:
    """Best t-inner-sparse approximation error in ℓ_p(ℓ_q)"""
    values = as_values(x)
    return mixed_norm(values - inner_threshold(values, t).values, e)


def random_structured_array(
    shape: MixedShape,
    mode: SparsityMode,
    s_or_t: int,
    rng: np.random.Generator,
    t: int = 1,
    flat: bool = False,
) -> MixedArray:
    """Draw a structured-sparse array with a uniformly random support.

    Args:
        shape: target shape
        mode: outer (s full rows), inner (t entries in every row),
            plain (k entries anywhere) or mixed (s rows with t entries each;
            ``t`` gives the inner count)
        s_or_t: s, t or k depending on mode
        rng: numpy generator
        t: inner count for the mixed mode
        flat: ±1 nonzeros instead of standard Gaussian ones
    """
    b, d = shape.b, shape.d
    mode = SparsityMode(mode)
    mask = np.zeros((b, d), dtype=bool)
    if mode == SparsityMode.OUTER:
        rows = rng.choice(b, size=_check_count("s", s_or_t, b), replace=False)
        mask[rows] = True
    elif mode == SparsityMode.INNER:
        t_row = _check_count("t", s_or_t, d)
        for i in range(b):
            mask[i, rng.choice(d, size=t_row, replace=False)] = True
    elif mode == SparsityMode.PLAIN:
        k = _check_count("k", s_or_t, b * d)
        mask.reshape(-1)[rng.choice(b * d, size=k, replace=False)] = True
    else:
        rows = rng.choice(b, size=_check_count("s", s_or_t, b), replace=False)
        t_row = _check_count("t", t, d)
        for i in rows:
            mask[i, rng.choice(d, size=t_row, replace=False)] = True
    if flat:
        entries = rng.choice(np.array([-1.0, 1.0]), size=(b, d))
    else:
        entries = rng.standard_normal((b, d))
    return MixedArray(shape, np.where(mask, entries, 0.0))
