"""Log-log rate fits of the aggregated bound against the total budget."""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import InputError
from .schedule import (
    BesovParams,
    BlockVariant,
    ScheduleVariant,
    aggregate_bound,
    budget_schedule,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RateFit:
    slope: float
    intercept: float
    residual: float
    points: List[Tuple[float, float]] = field(repr=False)
    corrected_slope: float
    loglog_power: float
    variant: ScheduleVariant
    rows: List[Dict] = field(default_factory=list, repr=False)

    def summary(self) -> Dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "residual": self.residual,
            "corrected_slope": self.corrected_slope,
            "loglog_power": self.loglog_power,
            "variant": self.variant.value,
            "points": [list(p) for p in self.points],
        }


def predicted_loglog_power(params: BesovParams, variant: Optional[ScheduleVariant] = None) -> float:
    """Exponent of log log2 m in the predicted upper rate m^{-r}(log log2 m)^power"""
    variant = ScheduleVariant(variant or params.classify())
    if variant == ScheduleVariant.SHARP:
        return 0.0
    endpoint_term = params.r + 1.0 / params.rho
    if variant == ScheduleVariant.ENDPOINT:
        return endpoint_term
    return params.gap_q + (endpoint_term if params.at_endpoint else 0.0)


def _fit(points: Sequence[Tuple[float, float]]) -> Tuple[float, float, float]:
    xs = np.array([p[0] for p in points])
    ys = np.array([p[1] for p in points])
    if np.ptp(xs) == 0:
        raise InputError("rate fit needs at least two distinct budgets")
    slope, intercept = np.polyfit(xs, ys, 1)
    residual = float(np.sqrt(np.mean((ys - (slope * xs + intercept)) ** 2)))
    return float(slope), float(intercept), residual


def rate_fit(
    params: BesovParams,
    J_range: Sequence[int],
    kappa: Optional[float] = None,
    beta: Optional[float] = None,
    variant: Optional[ScheduleVariant] = None,
    block_variant: Optional[BlockVariant] = None,
) -> RateFit:
    """Least-squares slope of log(aggregate) against log(total budget).

    The corrected slope fits aggregate/(log log2 total)^power, which
    should approach -r in every variant.
    """
    J_values = sorted(set(int(J) for J in J_range))
    if len(J_values) < 4:
        raise InputError(f"rate fit needs at least 4 values of J, got {len(J_values)}")
    variant = ScheduleVariant(variant or params.classify())
    power = predicted_loglog_power(params, variant)

    points: List[Tuple[float, float]] = []
    corrected: List[Tuple[float, float]] = []
    rows: List[Dict] = []
    for J in J_values:
        schedule = budget_schedule(params, J, kappa, beta, variant)
        aggregate = aggregate_bound(schedule, params, block_variant)
        log_total = math.log(schedule.total)
        points.append((log_total, math.log(aggregate)))
        loglog = math.log(math.log2(schedule.total))
        corrected.append((log_total, math.log(aggregate) - power * math.log(loglog)))
        slope_so_far = _fit(points)[0] if len(points) >= 2 else None
        rows.append({
            "J": J,
            "total_m": schedule.total,
            "aggregate": aggregate,
            "variant": variant.value,
            "slope_so_far": slope_so_far,
        })
        logger.debug(f"[besov J={J}] total={schedule.total} aggregate={aggregate:.6g}")

    slope, intercept, residual = _fit(points)
    corrected_slope = _fit(corrected)[0]
    logger.info(f"[besov d={params.d} r={params.r:g} {variant.value}] 斜率 {slope:.4f}, 修正斜率 {corrected_slope:.4f}")
    return RateFit(
        slope=slope,
        intercept=intercept,
        residual=residual,
        points=points,
        corrected_slope=corrected_slope,
        loglog_power=power,
        variant=variant,
        rows=rows,
    )
