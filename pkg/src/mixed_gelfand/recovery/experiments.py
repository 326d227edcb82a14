"""Recovery trials, stability ratios and phase-transition sweeps.

All success rates are typical-case evidence over random supports and
random Gaussian models; none of them certify worst-case behavior.
"""
import logging
import math
from dataclasses import asdict, dataclass
from enum import Enum
from itertools import product
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from ..errors import InputError, MixedGelfandError
from ..models import ArrayInput, ExponentPair, MixedArray, MixedShape, SparsityMode, as_values
from ..norms import random_structured_array, sigma_inner, sigma_outer
from ..parallel import run_ordered, trial_rng
from .decoders import create_decoder, relative_error
from .measurement import gaussian_model
from .solver import SolverConfig

logger = logging.getLogger(__name__)

SUCCESS_THRESHOLD = 1e-4
# median inner stability ratio of decode_bp above m = 3·bt·log(ed/t)
STABILITY_CALIBRATION = 5.0
MODEL_STREAM = 0
SIGNAL_STREAM = 1


class StabilityFlag(str, Enum):
    EXACT_RECOVERY = "exact_recovery"
    INFINITE_RATIO = "infinite_ratio"


def stability_ratio(
    x: ArrayInput,
    x_hat: ArrayInput,
    s_or_t: int,
    mode: SparsityMode,
    shape: Optional[MixedShape] = None,
    tol: float = 1e-9,
) -> Union[float, StabilityFlag]:
    """||x - x̂||_{ℓ2(ℓ2)} / (σ(x)/√k).

    σ is the best s-outer-sparse error in ℓ1(ℓ2) for mode outer and the
    best t-inner-sparse error in ℓ2(ℓ1) for mode inner.
    """
    values = as_values(x)
    if shape is not None and values.shape != shape.as_tuple():
        raise InputError(f"x has shape {values.shape}, expected {shape.as_tuple()}")
    mode = SparsityMode(mode)
    if mode == SparsityMode.OUTER:
        sigma = sigma_outer(values, s_or_t, ExponentPair(1, 2))
    elif mode == SparsityMode.INNER:
        sigma = sigma_inner(values, s_or_t, ExponentPair(2, 1))
    else:
        raise InputError(f"stability_ratio needs mode outer or inner, got {mode.value}")
    numerator = float(np.linalg.norm(values - as_values(x_hat)))
    denominator = sigma / math.sqrt(s_or_t)
    if denominator == 0.0:
        return StabilityFlag.EXACT_RECOVERY if numerator <= tol else StabilityFlag.INFINITE_RATIO
    return numerator / denominator


@dataclass(frozen=True)
class ExperimentRecord:
    b: int
    d: int
    mode: str
    s_or_t: int
    m: int
    decoder: str
    trial: int
    rel_error: float
    iterations: int
    converged: bool
    residual: float
    stability: Optional[Union[float, str]]
    seed: int
    error: Optional[str] = None

    def as_row(self) -> Dict:
        return asdict(self)


@dataclass(frozen=True)
class PhaseCell:
    b: int
    d: int
    mode: str
    s_or_t: int
    m: int
    decoder: str
    trials: int
    successes: int
    success_rate: float
    mean_rel_err: float
    seed: int
    failures: int = 0

    def as_row(self) -> Dict:
        row = asdict(self)
        row.pop("failures")
        return row


def _decoder_sparsity(decoder: str, mode: SparsityMode, s_or_t: int) -> Optional[int]:
    if decoder != "block_iht":
        return None
    if mode not in (SparsityMode.OUTER, SparsityMode.MIXED):
        raise InputError(f"block_iht only handles outer or mixed sparsity, got {mode.value}")
    return s_or_t


def run_trial(
    shape: MixedShape,
    mode: SparsityMode,
    s_or_t: int,
    m: int,
    trial: int,
    decoder: str,
    seed: int = 0,
    config: Optional[SolverConfig] = None,
    inner_t: int = 1,
    flat: bool = False,
    perturbation: float = 0.0,
) -> ExperimentRecord:
    """One (model, signal, decode) draw with streams keyed by (s_or_t, m, trial)"""
    mode = SparsityMode(mode)
    config = config or SolverConfig()
    decoder_name = getattr(decoder, "value", decoder)
    signal_rng = trial_rng(seed, s_or_t, m, trial, SIGNAL_STREAM)
    x = random_structured_array(shape, mode, s_or_t, signal_rng, t=inner_t, flat=flat)
    if perturbation > 0:
        x = x + MixedArray(shape, perturbation * signal_rng.standard_normal(shape.as_tuple()))
    common = dict(b=shape.b, d=shape.d, mode=mode.value, s_or_t=s_or_t, m=m,
                  decoder=decoder_name, trial=trial, seed=seed)
    try:
        model = gaussian_model(m, shape.b, shape.d, seed, key=(s_or_t, m, trial, MODEL_STREAM))
        result = create_decoder(decoder_name, _decoder_sparsity(decoder_name, mode, s_or_t)).decode(
            model, model.measure(x), shape.as_tuple(), config
        )
    except MixedGelfandError as e:
        logger.warning(f"[trial {common}] 解码失败: {e}")
        return ExperimentRecord(rel_error=math.inf, iterations=0, converged=False,
                                residual=math.inf, stability=None, error=str(e), **common)
    stability = None
    if mode in (SparsityMode.OUTER, SparsityMode.INNER):
        ratio = stability_ratio(x, result.estimate, s_or_t, mode)
        stability = ratio.value if isinstance(ratio, StabilityFlag) else ratio
    return ExperimentRecord(
        rel_error=relative_error(x, result.estimate),
        iterations=result.iterations,
        converged=result.converged,
        residual=result.residual,
        stability=stability,
        **common,
    )


def recover_trials(
    shape: MixedShape,
    mode: SparsityMode,
    s_or_t: int,
    m: int,
    trials: int,
    decoder: str,
    seed: int = 0,
    config: Optional[SolverConfig] = None,
    inner_t: int = 1,
    flat: bool = False,
    perturbation: float = 0.0,
    threads: int = 1,
) -> List[ExperimentRecord]:
    if trials < 1:
        raise InputError(f"trials must be >= 1, got {trials}")
    return run_ordered(
        lambda trial: run_trial(shape, mode, s_or_t, m, trial, decoder, seed, config,
                                inner_t, flat, perturbation),
        range(trials),
        threads,
    )


def median_stability(records: Sequence[ExperimentRecord]) -> Optional[float]:
    """Median of the numeric stability ratios; flags and failed trials are skipped"""
    ratios = [r.stability for r in records if isinstance(r.stability, float)]
    return float(np.median(ratios)) if ratios else None


def phase_transition(
    shape: MixedShape,
    mode: SparsityMode,
    sparsity_grid: Sequence[int],
    m_grid: Sequence[int],
    trials: int,
    decoder: str,
    seed: int = 0,
    config: Optional[SolverConfig] = None,
    threads: int = 1,
    inner_t: int = 1,
    flat: bool = False,
    threshold: float = SUCCESS_THRESHOLD,
) -> List[PhaseCell]:
    """Success rate and mean relative error for every (sparsity, m) cell.

    Decoder errors are counted as failed trials of their cell; the sweep
    keeps going.
    """
    if not sparsity_grid or not m_grid:
        raise InputError("sparsity and m grids must be nonempty")
    if trials < 1:
        raise InputError(f"trials must be >= 1, got {trials}")
    mode = SparsityMode(mode)
    decoder_name = getattr(decoder, "value", decoder)
    cells = list(product(sparsity_grid, m_grid))
    logger.info(f"[phase b={shape.b} d={shape.d}] {len(cells)} 个单元, 每个 {trials} 次试验")

    def run_cell(cell) -> PhaseCell:
        s_or_t, m = cell
        records = [
            run_trial(shape, mode, s_or_t, m, trial, decoder_name, seed, config, inner_t, flat)
            for trial in range(trials)
        ]
        errors = [r.rel_error for r in records if r.error is None]
        successes = sum(1 for e in errors if e <= threshold)
        mean_rel_err = math.fsum(errors) / len(errors) if errors else math.nan
        logger.debug(f"[phase s_or_t={s_or_t} m={m}] 成功 {successes}/{trials}")
        return PhaseCell(
            b=shape.b, d=shape.d, mode=mode.value, s_or_t=s_or_t, m=m, decoder=decoder_name,
            trials=trials, successes=successes, success_rate=successes / trials,
            mean_rel_err=mean_rel_err, seed=seed, failures=trials - len(errors),
        )

    return run_ordered(run_cell, cells, threads)


def critical_m(cells: Sequence[PhaseCell], level: float = 0.5) -> Dict[int, Optional[int]]:
    """Smallest m per sparsity whose success rate reaches ``level``"""
    result: Dict[int, Optional[int]] = {}
    for cell in sorted(cells, key=lambda c: (c.s_or_t, c.m)):
        result.setdefault(cell.s_or_t, None)
        if result[cell.s_or_t] is None and cell.success_rate >= level:
            result[cell.s_or_t] = cell.m
    return result
