from .layers import block_dimension, enumerate_layer, layer_counts, layer_multiindex_count
from .rates import RateFit, predicted_loglog_power, rate_fit
from .schedule import (
    BesovParams,
    BlockVariant,
    BudgetSchedule,
    ScheduleVariant,
    aggregate_bound,
    block_bound,
    budget_schedule,
    default_beta,
    default_block_variant,
    default_kappa,
    layer_split,
    opnorm,
)

__all__ = [
    "block_dimension",
    "enumerate_layer",
    "layer_counts",
    "layer_multiindex_count",
    "RateFit",
    "predicted_loglog_power",
    "rate_fit",
    "BesovParams",
    "BlockVariant",
    "BudgetSchedule",
    "ScheduleVariant",
    "aggregate_bound",
    "block_bound",
    "budget_schedule",
    "default_beta",
    "default_block_variant",
    "default_kappa",
    "layer_split",
    "opnorm",
]
