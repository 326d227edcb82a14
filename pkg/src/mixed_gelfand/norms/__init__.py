from .mixed import (
    lp_norm,
    mixed_norm,
    power_exponent,
    quasi_norm_constant,
    row_norms,
    split_constant,
)
from .sparsity import (
    inner_threshold,
    outer_threshold,
    random_structured_array,
    sigma_inner,
    sigma_outer,
)

__all__ = [
    "lp_norm",
    "mixed_norm",
    "power_exponent",
    "quasi_norm_constant",
    "row_norms",
    "split_constant",
    "inner_threshold",
    "outer_threshold",
    "random_structured_array",
    "sigma_inner",
    "sigma_outer",
]
