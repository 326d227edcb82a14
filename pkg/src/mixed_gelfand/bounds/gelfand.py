"""Closed-form two-sided bounds for Gelfand numbers of mixed-norm embeddings.

Natural logarithms throughout. Every absolute constant the theory leaves
unspecified is an explicit argument defaulting to 1.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Tuple

from ..errors import InputError
from ..models import ExponentPair, MixedShape

logger = logging.getLogger(__name__)


class RegimeLabel(str, Enum):
    """Branch of the truly mixed ℓ_p(ℓ_q) → ℓ_2(ℓ_2) bound"""
    SATURATED = "saturated"
    OUTER_DOMINATED = "outer-dominated"
    INNER_DOMINATED = "inner-dominated"


class BoundVariant(str, Enum):
    """Formula selector used by bound tables"""
    OUTER = "outer"
    FLAT = "flat"
    INNER = "inner"
    MIXED = "mixed"
    LOWER_OUTER = "lower_outer"
    LOWER_INNER = "lower_inner"


@dataclass(frozen=True)
class BoundParams:
    """Shape, codimension budget m, source/target exponents and constant"""
    shape: MixedShape
    m: int
    source: ExponentPair
    target: ExponentPair
    constant: float = 1.0

    def __post_init__(self):
        _check_m(self.m, self.shape.n)
        if not self.constant > 0:
            raise InputError(f"constant must be positive, got {self.constant}")


def _check_m(m: int, upper: int) -> None:
    if int(m) != m or not 1 <= m <= upper:
        raise InputError(f"m must be an integer in [1, {upper}], got {m}")


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InputError(message)


def bound_flat(m: int, n: int, p: float, q: float, constant: float = 1.0) -> float:
    """min{1, C·log(en/m)/m}^{1/p-1/q} for id: ℓ_p^n → ℓ_q^n"""
    _require(0 < p <= 1 and p < q <= 2, f"bound_flat needs 0 < p <= 1, p < q <= 2, got p={p}, q={q}")
    _check_m(m, n)
    arg = constant * math.log(math.e * n / m) / m
    return min(1.0, arg) ** (1.0 / p - 1.0 / q)


def bound_outer(params: BoundParams) -> float:
    """Outer case ℓ_p(ℓ_2) → ℓ_q(ℓ_2): min{1, C(log(eb/m)+d)/m}^{1/p-1/q}.

    For d = 1 the inner space is scalar and the bound is the flat one with
    n = b.
    """
    p, q = params.source.p, params.target.p
    _require(
        0 < p <= 1 and p < q <= 2,
        f"bound_outer needs 0 < p <= 1, p < q <= 2, got p={p}, q={q}",
    )
    _require(
        params.source.q == params.target.q,
        "bound_outer needs equal inner exponents in source and target",
    )
    b, d, m = params.shape.b, params.shape.d, params.m
    if d == 1:
        return bound_flat(m, b, p, q, params.constant)
    arg = params.constant * (math.log(math.e * b / m) + d) / m
    return min(1.0, arg) ** (1.0 / p - 1.0 / q)


def bound_inner(params: BoundParams) -> float:
    """Inner case ℓ_p(ℓ_q) → ℓ_p(ℓ_p): min{1, C·b·log(ebd/m)/m}^{1/q-1/p}"""
    p, q = params.source.p, params.source.q
    _require(
        0 < q <= 1 and q <= p <= 2,
        f"bound_inner needs 0 < q <= 1, q <= p <= 2, got p={p}, q={q}",
    )
    b, d, m = params.shape.b, params.shape.d, params.m
    arg = params.constant * b * math.log(math.e * b * d / m) / m
    return min(1.0, arg) ** (1.0 / q - 1.0 / p)


def bound_mixed(params: BoundParams) -> Tuple[RegimeLabel, float]:
    """Three-branch bound for ℓ_p(ℓ_q) → ℓ_2(ℓ_2) with q <= p <= 1.

    Branch predicates are evaluated at the given m with c = constant:
    saturated if m <= c·L, inner-dominated if m >= c·b·L, outer-dominated
    in between, where L = log(ebd/m). Since b >= 1 the three predicates
    cover every m; at a shared boundary the lower branch wins.
    """
    p, q = params.source.p, params.source.q
    _require(
        0 < q <= 1 and q <= p <= 1,
        f"bound_mixed needs 0 < q <= 1, q <= p <= 1, got p={p}, q={q}",
    )
    b, d, m, c = params.shape.b, params.shape.d, params.m, params.constant
    log_term = math.log(math.e * b * d / m)
    if m <= c * log_term:
        return RegimeLabel.SATURATED, 1.0
    if m <= c * b * log_term:
        value = (log_term / m) ** (1.0 / p - 0.5)
        return RegimeLabel.OUTER_DOMINATED, min(1.0, value)
    value = b ** (0.5 - 1.0 / p) * (b * log_term / m) ** (1.0 / q - 0.5)
    return RegimeLabel.INNER_DOMINATED, min(1.0, value)


def mixed_factorization_bounds(params: BoundParams) -> Tuple[float, float]:
    """Lower and upper values of the large-m factorization sandwich.

    lower = b^{1/2-1/p}·min{1, b·L/m}^{1/q-1/2}
    upper = b^{1/q-1/p}·min{1, L/m}^{1/q-1/2}
    """
    p, q = params.source.p, params.source.q
    _require(
        0 < q <= 1 and q <= p <= 1,
        f"mixed_factorization_bounds needs 0 < q <= 1, q <= p <= 1, got p={p}, q={q}",
    )
    b, d, m = params.shape.b, params.shape.d, params.m
    log_term = math.log(math.e * b * d / m)
    lower = b ** (0.5 - 1.0 / p) * min(1.0, b * log_term / m) ** (1.0 / q - 0.5)
    upper = b ** (1.0 / q - 1.0 / p) * min(1.0, log_term / m) ** (1.0 / q - 0.5)
    return lower, upper


def lower_bound_outer(
    m: int,
    b: int,
    d: int,
    p: float,
    q: float,
    c_pq: float = 1.0,
    c_p: float = 1.0,
) -> float:
    """c_pq·min{1, c_p(log(b/m) + d/(8e))/(2m)}^{1/p-1/q}.

    The same expression bounds id: ℓ_p(ℓ_r) → ℓ_q(ℓ_r) for any common
    inner exponent r. Clamped to 0 when log(b/m) + d/(8e) <= 0.
    """
    _require(0 < p < q <= 2, f"lower_bound_outer needs 0 < p < q <= 2, got p={p}, q={q}")
    MixedShape(b, d)
    _check_m(m, b * d)
    inner = 0.5 * c_p * (math.log(b / m) + d / (8.0 * math.e))
    if inner <= 0:
        return 0.0
    return c_pq * min(1.0, inner / m) ** (1.0 / p - 1.0 / q)


def lower_bound_inner(
    m: int,
    b: int,
    d: int,
    p: float,
    q: float,
    c_pq: float = 1.0,
    c_tilde: float = 1.0,
) -> float:
    """c_pq·min{1, c̃·b·log(ebd/m)/(64m)}^{1/q-1/p} for ℓ_p(ℓ_q) → ℓ_p(ℓ_p)"""
    _require(
        0 < q <= 1 and q <= p <= 2,
        f"lower_bound_inner needs 0 < q <= 1, q <= p <= 2, got p={p}, q={q}",
    )
    MixedShape(b, d)
    _check_m(m, b * d)
    arg = c_tilde * b * math.log(math.e * b * d / m) / (64.0 * m)
    return c_pq * min(1.0, arg) ** (1.0 / q - 1.0 / p)


def evaluate_variant(
    variant: BoundVariant,
    shape: MixedShape,
    m: int,
    p: float,
    q: float,
    constant: float = 1.0,
) -> Tuple[str, float]:
    """Evaluate one formula; returns (regime tag, value).

    ``p`` and ``q`` are the two exponents entering the formula: for outer,
    flat and lower_outer the source and target outer exponents, for inner,
    mixed and lower_inner the source outer and inner exponents.
    """
    variant = BoundVariant(variant)
    if variant == BoundVariant.OUTER:
        params = BoundParams(shape, m, ExponentPair(p, 2), ExponentPair(q, 2), constant)
        return "", bound_outer(params)
    if variant == BoundVariant.FLAT:
        return "", bound_flat(m, shape.n, p, q, constant)
    if variant == BoundVariant.INNER:
        params = BoundParams(shape, m, ExponentPair(p, q), ExponentPair(p, p), constant)
        return "", bound_inner(params)
    if variant == BoundVariant.MIXED:
        params = BoundParams(shape, m, ExponentPair(p, q), ExponentPair(2, 2), constant)
        label, value = bound_mixed(params)
        return label.value, value
    if variant == BoundVariant.LOWER_OUTER:
        return "", lower_bound_outer(m, shape.b, shape.d, p, q, c_pq=constant)
    return "", lower_bound_inner(m, shape.b, shape.d, p, q, c_pq=constant)


def bound_table(
    shape: MixedShape,
    m_values: Iterable[int],
    variants: Iterable[BoundVariant],
    p: float,
    q: float,
    constant: float = 1.0,
) -> List[Dict]:
    """One row per (m, variant) in the column order of the bounds CSV"""
    rows = []
    variants = [BoundVariant(v) for v in variants]
    for m in m_values:
        for variant in variants:
            regime, value = evaluate_variant(variant, shape, m, p, q, constant)
            rows.append({
                "b": shape.b,
                "d": shape.d,
                "m": int(m),
                "p": p,
                "q": q,
                "variant": variant.value,
                "constant": constant,
                "regime": regime,
                "value": value,
            })
    logger.info(f"[bounds b={shape.b} d={shape.d}] 计算完成，共 {len(rows)} 行")
    return rows
