"""Douglas-Rachford splitting for min f(z) subject to Az = y.

One half-step projects onto the affine feasible set through the cached
Cholesky factor of A·Aᵀ, the other applies the proximal map of f.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from ..errors import InputError
from ..models import MixedArray
from .measurement import MeasurementModel

logger = logging.getLogger(__name__)

Prox = Callable[[np.ndarray, float], np.ndarray]
Objective = Callable[[np.ndarray], float]


@dataclass(frozen=True)
class SolverConfig:
    feasibility_tol: float = 1e-7
    stop_tol: float = 1e-6
    max_iterations: int = 20000
    step: float = 1.0
    # block_iht step, normalized per iteration when None
    greedy_step: Optional[float] = None

    def __post_init__(self):
        if min(self.feasibility_tol, self.stop_tol, self.step) <= 0:
            raise InputError("solver tolerances and step must be positive")
        if self.greedy_step is not None and self.greedy_step <= 0:
            raise InputError(f"greedy_step must be positive, got {self.greedy_step}")
        if self.max_iterations < 1:
            raise InputError(f"max_iterations must be >= 1, got {self.max_iterations}")


@dataclass(frozen=True)
class DecodeResult:
    estimate: MixedArray
    iterations: int
    converged: bool
    residual: float
    objective: float

    @property
    def flat(self) -> np.ndarray:
        return self.estimate.flat()


def prox_group(v: np.ndarray, gamma: float) -> np.ndarray:
    """Row-wise group soft-thresholding, the prox of γ||·||_{ℓ1(ℓ2)}"""
    norms = np.sqrt(np.einsum("ij,ij->i", v, v))
    with np.errstate(divide="ignore", invalid="ignore"):
        factor = np.where(norms > gamma, 1.0 - gamma / norms, 0.0)
    return v * factor[:, None]


def prox_l1(v: np.ndarray, gamma: float) -> np.ndarray:
    return np.sign(v) * np.maximum(np.abs(v) - gamma, 0.0)


def _row_levels(sorted_cumsum: np.ndarray, lam: float) -> np.ndarray:
    """a_i(λ), the fixed point a = ||soft(v_i, λa)||_1 of every row"""
    k = np.arange(1, sorted_cumsum.shape[1] + 1)
    return (sorted_cumsum / (1.0 + k * lam)).max(axis=1)


def prox_l2l1(v: np.ndarray, gamma: float) -> np.ndarray:
    """Prox of γ||·||_{ℓ2(ℓ1)}.

    Row i is soft-thresholded at λ·a_i where a_i is the ℓ1 norm of the
    result row and λ solves λ·||a(λ)||_2 = γ.
    """
    magnitudes = np.abs(v)
    if math.sqrt(float(np.sum(magnitudes.max(axis=1) ** 2))) <= gamma:
        return np.zeros_like(v)
    cumsum = np.cumsum(-np.sort(-magnitudes, axis=1), axis=1)

    def gap(lam: float) -> float:
        levels = _row_levels(cumsum, lam)
        return lam * math.sqrt(float(np.dot(levels, levels))) - gamma

    hi = 1.0
    for _ in range(200):
        if gap(hi) >= 0:
            break
        hi *= 2.0
    lam = brentq(gap, 0.0, hi, xtol=1e-15, rtol=1e-13)
    thresholds = lam * _row_levels(cumsum, lam)
    return np.sign(v) * np.maximum(magnitudes - thresholds[:, None], 0.0)


def douglas_rachford(
    model: MeasurementModel,
    y: np.ndarray,
    shape: Tuple[int, int],
    prox: Prox,
    objective: Objective,
    config: SolverConfig,
    label: str = "dr",
) -> DecodeResult:
    y = np.asarray(y, dtype=float).reshape(-1)
    if y.size != model.m or not np.all(np.isfinite(y)):
        raise InputError(f"y must hold {model.m} finite values, got {y.size}")
    if shape[0] * shape[1] != model.n:
        raise InputError(f"shape {shape} does not match n={model.n}")

    project = model.projector(y)
    v = project(np.zeros(model.n))
    z = v
    converged = False
    iteration = 0
    for iteration in range(1, config.max_iterations + 1):
        z = project(v)
        w = prox((2.0 * z - v).reshape(shape), config.step).reshape(-1)
        v = v + w - z
        if np.linalg.norm(w - z) <= config.stop_tol * (1.0 + np.linalg.norm(z)):
            converged = True
            break

    residual = float(np.linalg.norm(model.matrix @ z - y))
    feasible = residual <= config.feasibility_tol * (1.0 + float(np.linalg.norm(y)))
    estimate = z.reshape(shape)
    result = DecodeResult(
        estimate=MixedArray.from_values(estimate),
        iterations=iteration,
        converged=converged and feasible,
        residual=residual,
        objective=objective(estimate),
    )
    if not result.converged:
        logger.warning(f"[{label} m={model.m} n={model.n}] {iteration} 次迭代未收敛, 残差 {residual:.3g}")
    else:
        logger.debug(f"[{label} m={model.m} n={model.n}] {iteration} 次迭代收敛")
    return result
