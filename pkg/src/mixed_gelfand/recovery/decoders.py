import logging
from typing import Optional, Tuple

import numpy as np

from ..errors import InputError
from ..models import ArrayInput, MixedArray, as_values
from ..norms import lp_norm, outer_threshold
from .base import BaseDecoder
from .measurement import MeasurementModel
from .solver import (
    DecodeResult,
    SolverConfig,
    douglas_rachford,
    prox_group,
    prox_l1,
    prox_l2l1,
)

logger = logging.getLogger(__name__)

DEFAULT_GREEDY_ITERATIONS = 500


def group_objective(z: np.ndarray) -> float:
    return float(lp_norm(z, 2, axis=1).sum())


def l1_objective(z: np.ndarray) -> float:
    return float(np.abs(z).sum())


def l2l1_objective(z: np.ndarray) -> float:
    return float(lp_norm(np.abs(z).sum(axis=1), 2))


def decode_group_bp(
    model: MeasurementModel, y: np.ndarray, shape: Tuple[int, int], config: Optional[SolverConfig] = None
) -> DecodeResult:
    """min ||z||_{ℓ1(ℓ2)} subject to Az = y"""
    return douglas_rachford(
        model, y, shape, prox_group, group_objective, config or SolverConfig(), "group_bp"
    )


def decode_bp(model: MeasurementModel, y: np.ndarray, config: Optional[SolverConfig] = None) -> DecodeResult:
    """min ||z||_1 subject to Az = y; the estimate is a single row of length n"""
    return douglas_rachford(
        model, y, (1, model.n), prox_l1, l1_objective, config or SolverConfig(), "bp"
    )


def decode_l2l1_bp(
    model: MeasurementModel, y: np.ndarray, shape: Tuple[int, int], config: Optional[SolverConfig] = None
) -> DecodeResult:
    """min ||z||_{ℓ2(ℓ1)} subject to Az = y"""
    return douglas_rachford(
        model, y, shape, prox_l2l1, l2l1_objective, config or SolverConfig(), "l2l1_bp"
    )


def decode_block_greedy(
    model: MeasurementModel,
    y: np.ndarray,
    shape: Tuple[int, int],
    s: int,
    iterations: int = DEFAULT_GREEDY_ITERATIONS,
    step: Optional[float] = None,
    tol: float = 1e-10,
) -> DecodeResult:
    """Iterative hard thresholding onto s-outer-sparse arrays.

    With ``step=None`` the step is ||g_S||²/||A g_S||² on the current row
    support S (normalized IHT). The iterate with the smallest residual is
    returned; it counts as converged once its residual is at most
    ``tol·(1+||y||)``, which also ends the iteration.
    """
    b, d = shape
    if not 1 <= s <= b:
        raise InputError(f"s must be in [1, {b}], got {s}")
    y = np.asarray(y, dtype=float).reshape(-1)
    if y.size != model.m:
        raise InputError(f"y must hold {model.m} values, got {y.size}")
    A = model.matrix
    y_norm = float(np.linalg.norm(y))
    x = np.zeros((b, d))
    best, best_residual = x, y_norm
    iteration = 0
    for iteration in range(1, iterations + 1):
        residual_vec = y - A @ x.reshape(-1)
        gradient = (A.T @ residual_vec).reshape(b, d)
        if step is None:
            if np.any(x):
                rows = np.flatnonzero(np.any(x != 0, axis=1))
            else:
                rows = np.argsort(-lp_norm(gradient, 2, axis=1), kind="stable")[:s]
            restricted = np.zeros_like(gradient)
            restricted[rows] = gradient[rows]
            denominator = float(np.linalg.norm(A @ restricted.reshape(-1)) ** 2)
            numerator = float(np.sum(restricted ** 2))
            mu = numerator / denominator if denominator > 0 else 1.0
        else:
            mu = step
        x = outer_threshold(x + mu * gradient, s).values
        residual = float(np.linalg.norm(y - A @ x.reshape(-1)))
        if residual < best_residual:
            best, best_residual = x, residual
        if best_residual <= tol * (1.0 + y_norm):
            break
    logger.debug(f"[block_iht m={model.m} s={s}] {iteration} 次迭代, 残差 {best_residual:.3g}")
    return DecodeResult(
        estimate=MixedArray.from_values(best),
        iterations=iteration,
        converged=best_residual <= tol * (1.0 + y_norm),
        residual=best_residual,
        objective=group_objective(best),
    )


class GroupBPDecoder(BaseDecoder):
    def decode(self, model, y, shape, config):
        return decode_group_bp(model, y, shape, config)

    def get_decoder_name(self) -> str:
        return "group_bp"


class BPDecoder(BaseDecoder):
    def decode(self, model, y, shape, config):
        result = decode_bp(model, y, config)
        return DecodeResult(
            estimate=MixedArray.from_values(result.flat.reshape(shape)),
            iterations=result.iterations,
            converged=result.converged,
            residual=result.residual,
            objective=result.objective,
        )

    def get_decoder_name(self) -> str:
        return "bp"


class L2L1BPDecoder(BaseDecoder):
    def decode(self, model, y, shape, config):
        return decode_l2l1_bp(model, y, shape, config)

    def get_decoder_name(self) -> str:
        return "l2l1_bp"


class BlockIHTDecoder(BaseDecoder):
    """Greedy cross-check; needs the outer sparsity s up front"""

    def __init__(self, s: int, iterations: int = DEFAULT_GREEDY_ITERATIONS):
        self.s = s
        self.iterations = iterations

    def decode(self, model, y, shape, config):
        step = config.greedy_step if config is not None else None
        return decode_block_greedy(model, y, shape, self.s, self.iterations, step=step)

    def get_decoder_name(self) -> str:
        return "block_iht"


DECODERS = {
    "group_bp": GroupBPDecoder,
    "bp": BPDecoder,
    "l2l1_bp": L2L1BPDecoder,
    "block_iht": BlockIHTDecoder,
}


def create_decoder(name: str, s: Optional[int] = None) -> BaseDecoder:
    """Factory function to create a decoder by name"""
    name = getattr(name, "value", name)
    if name not in DECODERS:
        raise InputError(f"unknown decoder {name!r}, expected one of {sorted(DECODERS)}")
    if name == "block_iht":
        if s is None:
            raise InputError("block_iht needs the outer sparsity s")
        return BlockIHTDecoder(s)
    return DECODERS[name]()


def relative_error(x: ArrayInput, x_hat: ArrayInput) -> float:
    """||x̂ - x||_F / ||x||_F, or ||x̂||_F when x = 0"""
    values = as_values(x)
    diff = float(np.linalg.norm(as_values(x_hat) - values))
    scale = float(np.linalg.norm(values))
    return diff / scale if scale > 0 else diff

