"""Exception hierarchy shared by all modules."""
from typing import Any, Optional


class MixedGelfandError(Exception):
    """Base class for every error raised by this package"""


class InputError(MixedGelfandError, ValueError):
    """Parameter out of range, inadmissible exponents or non-finite data"""


class DivergentTailError(InputError):
    """Operator-norm tail of a Besov schedule is not summable"""


class ConfigError(MixedGelfandError):
    """Malformed JSON or schema violation in a run config"""


class FactorizationError(MixedGelfandError):
    """A·Aᵀ could not be factorized (rank deficient measurement matrix)"""


class ConstructiveFailure(MixedGelfandError):
    """Randomized construction ran out of attempts

    The best object found so far is kept on ``best`` so callers can still
    inspect or use it.
    """

    def __init__(self, message: str, best: Optional[Any] = None):
        super().__init__(message)
        self.best = best
