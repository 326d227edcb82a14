from abc import ABC, abstractmethod
from typing import Tuple

import numpy as np

from .measurement import MeasurementModel
from .solver import DecodeResult, SolverConfig


class BaseDecoder(ABC):
    """Abstract base class for recovery decoders"""

    @abstractmethod
    def decode(
        self,
        model: MeasurementModel,
        y: np.ndarray,
        shape: Tuple[int, int],
        config: SolverConfig,
    ) -> DecodeResult:
        """Reconstruct a b×d array from y = Ax"""
        pass

    @abstractmethod
    def get_decoder_name(self) -> str:
        """Return the name of this decoder for logging and output"""
        pass
