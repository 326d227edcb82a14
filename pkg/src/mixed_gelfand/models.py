import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Tuple, Union

import numpy as np

from .errors import InputError


def _check_exponent(name: str, value: float) -> float:
    value = float(value)
    if math.isnan(value) or value <= 0:
        raise InputError(f"exponent {name} must be positive, got {value}")
    return value


def reciprocal(value: float) -> float:
    """1/value with the convention 1/∞ = 0"""
    return 0.0 if math.isinf(value) else 1.0 / value


@dataclass(frozen=True)
class ExponentPair:
    """Outer exponent p and inner exponent q of ℓ_p(ℓ_q); ∞ allowed"""
    p: float
    q: float

    def __post_init__(self):
        object.__setattr__(self, "p", _check_exponent("p", self.p))
        object.__setattr__(self, "q", _check_exponent("q", self.q))

    @property
    def inv_p(self) -> float:
        return reciprocal(self.p)

    @property
    def inv_q(self) -> float:
        return reciprocal(self.q)

    def __str__(self) -> str:
        return f"({self.p:g},{self.q:g})"


@dataclass(frozen=True)
class MixedShape:
    """b blocks of length d"""
    b: int
    d: int

    def __post_init__(self):
        if int(self.b) != self.b or int(self.d) != self.d:
            raise InputError(f"shape must be integral, got b={self.b}, d={self.d}")
        if self.b < 1 or self.d < 1:
            raise InputError(f"shape needs b >= 1 and d >= 1, got b={self.b}, d={self.d}")
        object.__setattr__(self, "b", int(self.b))
        object.__setattr__(self, "d", int(self.d))

    @property
    def n(self) -> int:
        return self.b * self.d

    def as_tuple(self) -> Tuple[int, int]:
        return (self.b, self.d)


@dataclass(frozen=True)
class MixedArray:
    """Real b×d array; row i is block i"""
    shape: MixedShape
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.size != self.shape.n:
            raise InputError(
                f"expected {self.shape.n} values for shape {self.shape.as_tuple()}, got {values.size}"
            )
        values = values.reshape(self.shape.b, self.shape.d)
        if not np.all(np.isfinite(values)):
            raise InputError("MixedArray entries must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_values(cls, values) -> "MixedArray":
        arr = np.asarray(values, dtype=float)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2:
            raise InputError(f"MixedArray needs a 2-d array, got ndim={arr.ndim}")
        return cls(MixedShape(*arr.shape), arr)

    @classmethod
    def zeros(cls, shape: MixedShape) -> "MixedArray":
        return cls(shape, np.zeros((shape.b, shape.d)))

    def flat(self) -> np.ndarray:
        return self.values.reshape(-1).copy()

    def __sub__(self, other: "MixedArray") -> "MixedArray":
        return MixedArray(self.shape, self.values - as_values(other))

    def __add__(self, other: "MixedArray") -> "MixedArray":
        return MixedArray(self.shape, self.values + as_values(other))


ArrayInput = Union[MixedArray, np.ndarray]


def as_values(x: ArrayInput) -> np.ndarray:
    """Return the b×d float matrix behind x, checking finiteness"""
    if isinstance(x, MixedArray):
        return x.values
    return MixedArray.from_values(x).values


@dataclass(frozen=True)
class SupportPattern:
    """Set of (row, column) positions inside [b]×[d]"""
    shape: MixedShape
    entries: FrozenSet[Tuple[int, int]]

    def __post_init__(self):
        entries = frozenset((int(i), int(j)) for i, j in self.entries)
        for i, j in entries:
            if not (0 <= i < self.shape.b and 0 <= j < self.shape.d):
                raise InputError(f"support index ({i},{j}) outside {self.shape.as_tuple()}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_array(cls, x: ArrayInput, tol: float = 0.0) -> "SupportPattern":
        values = as_values(x)
        rows, cols = np.nonzero(np.abs(values) > tol)
        return cls(MixedShape(*values.shape), frozenset(zip(rows.tolist(), cols.tolist())))

    @property
    def outer_sparsity(self) -> int:
        return len({i for i, _ in self.entries})

    @property
    def inner_sparsity(self) -> int:
        counts = Counter(i for i, _ in self.entries)
        return max(counts.values(), default=0)

    def is_sparse(self, s: int, t: int) -> bool:
        """(s,t)-sparse: at most s rows, each with at most t entries"""
        return self.outer_sparsity <= s and self.inner_sparsity <= t

    def mask(self) -> np.ndarray:
        out = np.zeros(self.shape.as_tuple(), dtype=bool)
        for i, j in self.entries:
            out[i, j] = True
        return out


class SparsityMode(str, Enum):
    """Structured sparsity model of a signal"""
    OUTER = "outer"
    INNER = "inner"
    PLAIN = "plain"
    MIXED = "mixed"
