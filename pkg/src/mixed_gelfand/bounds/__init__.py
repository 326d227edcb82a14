from .gelfand import (
    BoundParams,
    BoundVariant,
    RegimeLabel,
    bound_flat,
    bound_inner,
    bound_mixed,
    bound_outer,
    bound_table,
    evaluate_variant,
    lower_bound_inner,
    lower_bound_outer,
    mixed_factorization_bounds,
)
from .inversion import (
    implied_m_inner,
    implied_m_outer,
    invert_check,
    packing_constant,
    sharp_embedding_constant,
)

__all__ = [
    "BoundParams",
    "BoundVariant",
    "RegimeLabel",
    "bound_flat",
    "bound_inner",
    "bound_mixed",
    "bound_outer",
    "bound_table",
    "evaluate_variant",
    "lower_bound_inner",
    "lower_bound_outer",
    "mixed_factorization_bounds",
    "implied_m_inner",
    "implied_m_outer",
    "invert_check",
    "packing_constant",
    "sharp_embedding_constant",
]
