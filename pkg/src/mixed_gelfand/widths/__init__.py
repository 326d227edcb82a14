from .escape import (
    GaussianNormTable,
    containment_holds,
    escape_margin,
    escape_probability_floor,
    gaussian_norm_mean,
    interpolation_exponents,
    rho_threshold,
)
from .gaussian import (
    WidthEstimate,
    in_D,
    sup_D,
    sup_outer_sparse,
    width_D,
    width_D_direct,
    width_table,
    width_upper_formula,
)

__all__ = [
    "GaussianNormTable",
    "containment_holds",
    "escape_margin",
    "escape_probability_floor",
    "gaussian_norm_mean",
    "interpolation_exponents",
    "rho_threshold",
    "WidthEstimate",
    "in_D",
    "sup_D",
    "sup_outer_sparse",
    "width_D",
    "width_D_direct",
    "width_table",
    "width_upper_formula",
]
