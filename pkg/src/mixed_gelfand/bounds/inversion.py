"""Inversion lemma, implied measurement counts and sharp embedding constants."""
import math
from typing import Optional

from ..errors import InputError
from ..models import ExponentPair

# relative slack for the inversion lemma, which is tight at x = y/(Ce)
INVERT_SLACK = 1e-12


def _check_stability_constants(D: float, c: float, C: float) -> None:
    if not (D > 0 and c > 0 and C >= 1):
        raise InputError(f"need D > 0, c > 0 and C >= 1, got D={D}, c={c}, C={C}")


def _inversion_factor(C: float) -> float:
    ce = C * math.e
    return ce / (1.0 + math.log(ce))


def invert_check(C: float, x: float, y: float, K: float) -> bool:
    """True iff x <= y/(Ce·log(eK/y)) implies y >= Ce/(1+log(Ce))·x·log(eK/x)"""
    if not (C >= 1 and x > 0 and 0 < y <= K):
        raise InputError(f"invert_check needs C >= 1, x > 0, 0 < y <= K; got C={C}, x={x}, y={y}, K={K}")
    premise = x <= y / (C * math.e * math.log(math.e * K / y))
    if not premise:
        return True
    conclusion = _inversion_factor(C) * x * math.log(math.e * K / x)
    return y >= conclusion * (1.0 - INVERT_SLACK)


def implied_m_outer(
    s: float,
    b: int,
    d: int,
    D: float,
    c: float = 1.0,
    C: float = 1.0,
) -> Optional[float]:
    """Measurements forced by s-outer-sparse stable recovery with constant D.

    Returns None when s <= D²/c², where nothing follows.
    """
    _check_stability_constants(D, c, C)
    if s <= D ** 2 / c ** 2:
        return None
    x = c ** 2 * s / D ** 2
    # log(e·b·e^d/x) without forming e^d
    return _inversion_factor(C) * x * (1.0 + math.log(b / x) + d)


def implied_m_inner(
    t: float,
    b: int,
    d: int,
    D: float,
    c: float = 1.0,
    C: float = 1.0,
) -> Optional[float]:
    """b times the per-block count forced by t-inner-sparse stable recovery"""
    _check_stability_constants(D, c, C)
    if t <= D ** 2 / c ** 2:
        return None
    x = c ** 2 * t / D ** 2
    return b * _inversion_factor(C) * x * math.log(math.e * b * d / x)


def sharp_embedding_constant(
    s: int,
    t: int,
    src: ExponentPair,
    dst: ExponentPair,
) -> float:
    """sup ||x||_src / ||x||_dst over (s,t)-sparse x: s^{1/p-1/r}·t^{1/q-1/u}"""
    if s < 1 or t < 1:
        raise InputError(f"s and t must be >= 1, got s={s}, t={t}")
    if src.p > dst.p or src.q > dst.q:
        raise InputError(f"need src exponents <= dst exponents, got {src} and {dst}")
    return s ** (src.inv_p - dst.inv_p) * t ** (src.inv_q - dst.inv_q)


def packing_constant(alpha: float, beta: float, p: float) -> float:
    """c̃ = 1/log(α + 2^{1+1/p}·α²·β), the constant of the packing lower bounds"""
    return 1.0 / math.log(alpha + 2.0 ** (1.0 + 1.0 / p) * alpha ** 2 * beta)
