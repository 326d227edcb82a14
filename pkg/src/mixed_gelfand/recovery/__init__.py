from .base import BaseDecoder
from .decoders import (
    BlockIHTDecoder,
    BPDecoder,
    GroupBPDecoder,
    L2L1BPDecoder,
    create_decoder,
    decode_block_greedy,
    decode_bp,
    decode_group_bp,
    decode_l2l1_bp,
    relative_error,
)
from .experiments import (
    STABILITY_CALIBRATION,
    SUCCESS_THRESHOLD,
    ExperimentRecord,
    PhaseCell,
    StabilityFlag,
    critical_m,
    median_stability,
    phase_transition,
    recover_trials,
    run_trial,
    stability_ratio,
)
from .measurement import MeasurementModel, gaussian_model
from .solver import DecodeResult, SolverConfig, prox_group, prox_l1, prox_l2l1

__all__ = [
    "BaseDecoder",
    "BlockIHTDecoder",
    "BPDecoder",
    "GroupBPDecoder",
    "L2L1BPDecoder",
    "create_decoder",
    "decode_block_greedy",
    "decode_bp",
    "decode_group_bp",
    "decode_l2l1_bp",
    "relative_error",
    "STABILITY_CALIBRATION",
    "SUCCESS_THRESHOLD",
    "ExperimentRecord",
    "PhaseCell",
    "StabilityFlag",
    "critical_m",
    "median_stability",
    "phase_transition",
    "recover_trials",
    "run_trial",
    "stability_ratio",
    "MeasurementModel",
    "gaussian_model",
    "DecodeResult",
    "SolverConfig",
    "prox_group",
    "prox_l1",
    "prox_l2l1",
]
