"""Gaussian widths of outer-sparse unit vectors and of their convex relaxation D."""
import logging
import math
from dataclasses import dataclass
from itertools import chain
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from ..errors import InputError
from ..models import ArrayInput, as_values
from ..norms import lp_norm
from ..parallel import chunked, mean_and_stderr, run_ordered, trial_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WidthEstimate:
    """Monte Carlo mean with its standard error (None for a single trial)"""
    mean: float
    std_error: Optional[float]
    trials: int
    seed: int

    def __post_init__(self):
        if self.trials < 1:
            raise InputError(f"trials must be >= 1, got {self.trials}")
        if self.std_error is not None and self.std_error < 0:
            raise InputError("std_error must be nonnegative")


def _check_s(s: int, b: int) -> None:
    if int(s) != s or not 1 <= s <= b:
        raise InputError(f"s must be an integer in [1, {b}], got {s}")


def sup_outer_sparse(g: ArrayInput, s: int) -> float:
    """sup of <g,x> over unit-norm s-outer-sparse x.

    Equals the root of the sum of the s largest squared row norms.
    """
    values = as_values(g)
    _check_s(s, values.shape[0])
    squares = np.einsum("ij,ij->i", values, values)
    top = np.partition(squares, values.shape[0] - s)[values.shape[0] - s:]
    return math.sqrt(math.fsum(top))


def sup_D(g: ArrayInput, s: int) -> float:
    """sup of <g,x> over D = {||x||_2 <= 1, ||x||_{ℓ1(ℓ2)} <= √s}.

    Rows of the maximizer align with the rows of g; their lengths are
    (a - λ)_+ normalized, with a the row norms of g and λ >= 0 the
    smallest multiplier meeting the ℓ1(ℓ2) constraint.
    """
    values = as_values(g)
    _check_s(s, values.shape[0])
    a = lp_norm(values, 2, axis=1)
    norm = float(np.sqrt(np.dot(a, a)))
    root_s = math.sqrt(s)
    if norm == 0.0 or a.sum() <= root_s * norm:
        return norm

    def excess(lam: float) -> float:
        r = np.maximum(a - lam, 0.0)
        return r.sum() - root_s * math.sqrt(float(np.dot(r, r)))

    top = float(a.max())
    hi = top * (1.0 - 1e-12)
    if excess(hi) >= 0:
        # at least s rows tie for the maximum
        return top * root_s
    lam = brentq(excess, 0.0, hi, xtol=1e-15, rtol=1e-14)
    r = np.maximum(a - lam, 0.0)
    r /= math.sqrt(float(np.dot(r, r)))
    return float(np.dot(a, r))


def in_D(x: ArrayInput, s: int, tol: float = 1e-12) -> bool:
    values = as_values(x)
    rows = lp_norm(values, 2, axis=1)
    return (
        float(np.sqrt(np.dot(rows, rows))) <= 1.0 + tol
        and float(rows.sum()) <= math.sqrt(s) * (1.0 + tol)
    )


def _monte_carlo(statistic, b, d, s, trials, seed, threads) -> WidthEstimate:
    if trials < 1:
        raise InputError(f"trials must be >= 1, got {trials}")
    _check_s(s, b)

    def run_chunk(chunk: range) -> List[float]:
        return [statistic(trial_rng(seed, trial).standard_normal((b, d)), s) for trial in chunk]

    values = list(chain.from_iterable(run_ordered(run_chunk, chunked(trials), threads)))
    mean, std_error = mean_and_stderr(values)
    return WidthEstimate(mean=mean, std_error=std_error, trials=trials, seed=seed)


def width_D(b: int, d: int, s: int, trials: int, seed: int = 0, threads: int = 1) -> WidthEstimate:
    """Monte Carlo estimate of w(conv L_{b,d,s}).

    The true w(D_{b,d,s}) lies between this value and twice it.
    """
    return _monte_carlo(sup_outer_sparse, b, d, s, trials, seed, threads)


def width_D_direct(b: int, d: int, s: int, trials: int, seed: int = 0, threads: int = 1) -> WidthEstimate:
    """Monte Carlo estimate of w(D_{b,d,s}) from the exact support function"""
    return _monte_carlo(sup_D, b, d, s, trials, seed, threads)


def width_upper_formula(b: int, d: int, s: int, constant: float = 1.0) -> float:
    """C(√(s·log(eb/s)) + √(sd))"""
    _check_s(s, b)
    return constant * (math.sqrt(s * math.log(math.e * b / s)) + math.sqrt(s * d))


def width_table(
    grid: Iterable[Tuple[int, int, int]],
    trials: int,
    seed: int = 0,
    constant: float = 1.0,
    threads: int = 1,
) -> List[Dict]:
    """Rows b,d,s,trials,seed,mean,std_error,upper_formula per (b,d,s)"""
    rows = []
    for b, d, s in grid:
        estimate = width_D(b, d, s, trials, seed=seed, threads=threads)
        rows.append({
            "b": b,
            "d": d,
            "s": s,
            "trials": trials,
            "seed": seed,
            "mean": estimate.mean,
            "std_error": estimate.std_error,
            "upper_formula": width_upper_formula(b, d, s, constant),
        })
        logger.info(f"[width b={b} d={d} s={s}] 均值 {estimate.mean:.6g}")
    return rows
