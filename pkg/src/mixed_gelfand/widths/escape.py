"""Gordon escape-through-the-mesh quantities and interpolation exponents."""
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Tuple

import numpy as np
from scipy.special import gammaln

from ..errors import InputError
from ..models import ArrayInput, ExponentPair, as_values
from ..norms import mixed_norm
from .gaussian import in_D


def gaussian_norm_mean(m):
    """E_m = E||g||_2 for standard Gaussian g in R^m, √2·Γ((m+1)/2)/Γ(m/2)"""
    m_arr = np.asarray(m, dtype=float)
    if np.any(m_arr < 1):
        raise InputError("gaussian_norm_mean needs m >= 1")
    value = math.sqrt(2.0) * np.exp(gammaln((m_arr + 1.0) / 2.0) - gammaln(m_arr / 2.0))
    return float(value) if value.ndim == 0 else value


@dataclass
class GaussianNormTable:
    """E_m for a set of m, checked against m/√(m+1) <= E_m <= √m"""
    values: Dict[int, float] = field(default_factory=dict)

    @classmethod
    def build(cls, ms: Iterable[int]) -> "GaussianNormTable":
        ms = np.array(sorted(set(int(m) for m in ms)), dtype=np.int64)
        means = np.atleast_1d(gaussian_norm_mean(ms))
        lower = ms / np.sqrt(ms + 1.0)
        upper = np.sqrt(ms.astype(float))
        bad = (means < lower * (1 - 1e-12)) | (means > upper * (1 + 1e-12))
        if bad.any():
            raise InputError(f"E_m bracket violated at m={ms[bad][:5].tolist()}")
        return cls(dict(zip(ms.tolist(), means.tolist())))

    def __getitem__(self, m: int) -> float:
        return self.values[m]

    def __len__(self) -> int:
        return len(self.values)


def escape_margin(m: int, width: float, t: float) -> float:
    """E_m - w - t; positive means the kernel misses the set with
    probability at least 1 - exp(-t²/2)"""
    if m < 1 or width < 0 or t <= 0:
        raise InputError(f"need m >= 1, width >= 0, t > 0; got m={m}, width={width}, t={t}")
    return gaussian_norm_mean(m) - width - t


def escape_probability_floor(t: float) -> float:
    return 1.0 - math.exp(-t * t / 2.0)


def _check_pq(p: float, q: float, strict: bool = True) -> None:
    ok = 0 < p <= 1 and (p < q if strict else p <= q) and q <= 2
    if not ok:
        raise InputError(f"need 0 < p <= 1 and p {'<' if strict else '<='} q <= 2, got p={p}, q={q}")


def interpolation_exponents(p: float, q: float) -> Tuple[float, float]:
    """θ with 1/q = θ/p + (1-θ)/2, and η = (1/2)/(1/p - 1/2)"""
    _check_pq(p, q)
    gap = 1.0 / p - 0.5
    return (1.0 / q - 0.5) / gap, 0.5 / gap


def rho_threshold(s: int, p: float, q: float) -> float:
    """ρ = s^{-(1/p-1/q)}"""
    if s < 1:
        raise InputError(f"s must be >= 1, got {s}")
    _check_pq(p, q, strict=False)
    return s ** -(1.0 / p - 1.0 / q)


def containment_holds(x: ArrayInput, s: int, p: float, q: float, tol: float = 1e-12) -> bool:
    """For x in the ℓ_p(ℓ_2) ball with ||x||_{ℓ_q(ℓ_2)} > ρ, check x/||x||_2 ∈ D.

    Vacuously true when x is outside the ball or below the threshold.
    """
    values = as_values(x)
    if mixed_norm(values, ExponentPair(p, 2)) > 1.0 + tol:
        return True
    if mixed_norm(values, ExponentPair(q, 2)) <= rho_threshold(s, p, q):
        return True
    return in_D(values / np.linalg.norm(values), s, tol=1e-9)
