"""Mixed (quasi-)norms of b×d arrays and their triangle constants."""
import math
from typing import Optional

import numpy as np

from ..models import ArrayInput, ExponentPair, as_values


def lp_norm(values, p: float, axis: Optional[int] = None):
    """ℓ_p (quasi-)norm along ``axis``.

    Entries are scaled by the largest magnitude before powering, so that
    small exponents (p < 1) and large dimensions stay in floating range.

    Args:
        values: input array
        p: exponent in (0, ∞]
        axis: axis to reduce over, None for all entries

    Returns:
        float for ``axis=None``, otherwise an array of norms over ``axis``
    """
    a = np.abs(np.asarray(values, dtype=float))
    if a.size == 0:
        return 0.0 if axis is None else np.zeros(np.delete(a.shape, axis))
    if math.isinf(p):
        out = a.max(axis=axis)
        return float(out) if axis is None else out
    scale = a.max(axis=axis, keepdims=True)
    safe = np.where(scale > 0, scale, 1.0)
    total = np.sum((a / safe) ** p, axis=axis)
    out = np.squeeze(scale, axis=axis) * total ** (1.0 / p)
    return float(out) if axis is None else out


def row_norms(x: ArrayInput, q: float) -> np.ndarray:
    """Inner ℓ_q norm of every row"""
    return lp_norm(as_values(x), q, axis=1)


def mixed_norm(x: ArrayInput, e: ExponentPair) -> float:
    """||x||_{ℓ_p(ℓ_q)}: outer ℓ_p norm of the inner ℓ_q row norms"""
    return float(lp_norm(row_norms(x, e.q), e.p))


def quasi_norm_constant(e: ExponentPair) -> float:
    """Triangle constant α with ||x+y|| <= α(||x|| + ||y||).

    2^{1/min(p,q,1) - 1} is valid for every ℓ_p(ℓ_q), not necessarily the
    smallest one.
    """
    rho = min(e.p, e.q, 1.0)
    return 2.0 ** (1.0 / rho - 1.0)


def power_exponent(e: ExponentPair) -> float:
    """ρ = min(p, q, 1); ||·||^ρ is subadditive"""
    return min(e.p, e.q, 1.0)


def split_constant(e: ExponentPair, tight: bool = False) -> float:
    """β with ||x_S|| + ||x_{S^c}|| <= β||x|| for every split S.

    2 is always valid and is the default. ``tight=True`` returns the
    analytic constant, which is smaller for most exponent pairs.
    """
    if not tight:
        return 2.0
    if e.p >= 1.0:
        exponent = 1.0 - 1.0 / max(e.p, e.q)
    else:
        # p < 1: reverse Minkowski on the nonnegative row norms
        exponent = 1.0 - e.inv_q
    return float(min(2.0, max(1.0, 2.0 ** max(0.0, exponent))))
