"""Gaussian measurement ensembles."""
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Tuple

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from ..errors import FactorizationError, InputError
from ..models import ArrayInput, as_values
from ..parallel import trial_rng


@dataclass(frozen=True)
class MeasurementModel:
    """A = B/√m for an m×n standard Gaussian B"""
    m: int
    n: int
    matrix: np.ndarray = field(repr=False)
    scale: float
    seed: int

    def __post_init__(self):
        if self.matrix.shape != (self.m, self.n):
            raise InputError(f"matrix shape {self.matrix.shape} != ({self.m}, {self.n})")
        if not 1 <= self.m <= self.n:
            raise InputError(f"need 1 <= m <= n, got m={self.m}, n={self.n}")

    def measure(self, x: ArrayInput) -> np.ndarray:
        return self.matrix @ as_values(x).reshape(-1)

    @cached_property
    def gram_factor(self):
        """Cholesky factor of A·Aᵀ"""
        gram = self.matrix @ self.matrix.T
        try:
            factor = cho_factor(gram, lower=True, check_finite=False)
        except LinAlgError as e:
            raise FactorizationError(f"A·Aᵀ is not positive definite (m={self.m}, n={self.n})") from e
        diagonal = np.diag(factor[0])
        if diagonal.min() <= 1e-12 * diagonal.max():
            raise FactorizationError(f"A·Aᵀ is numerically singular (m={self.m}, n={self.n})")
        return factor

    def projector(self, y: np.ndarray) -> Callable[[np.ndarray], np.ndarray]:
        """Orthogonal projection onto {z : Az = y}"""
        factor = self.gram_factor

        def project(v: np.ndarray) -> np.ndarray:
            return v - self.matrix.T @ cho_solve(factor, self.matrix @ v - y, check_finite=False)

        return project


def gaussian_model(m: int, b: int, d: int, seed: int = 0, key: Tuple[int, ...] = ()) -> MeasurementModel:
    """Seeded Gaussian model for b×d signals.

    ``key`` extends the seed the same way trial streams do, so sweeps can
    draw one independent model per cell and trial.
    """
    n = b * d
    if int(m) != m or not 1 <= m <= n:
        raise InputError(f"m must be an integer in [1, {n}], got {m}")
    scale = 1.0 / math.sqrt(m)
    matrix = trial_rng(seed, *key).standard_normal((int(m), n)) * scale
    return MeasurementModel(m=int(m), n=n, matrix=matrix, scale=scale, seed=seed)
