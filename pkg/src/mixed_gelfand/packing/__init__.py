from .codes import ProductCode, ScanOrder, gv_bound, gv_code, hamming_ball_size
from .families import SetFamily, build_set_family, default_family_size
from .pairs import pairwise_min
from .sparse import (
    RADIUS_SAMPLES,
    PackingCertificate,
    PackingFamily,
    build_sparse_packing,
    radius_sample_indices,
    verify_packing,
)
from .volume import (
    greedy_epsilon_packing,
    log_volume_packing_cap,
    quotient_packing_cap,
    volume_packing_cap,
)

__all__ = [
    "ProductCode",
    "ScanOrder",
    "gv_bound",
    "gv_code",
    "hamming_ball_size",
    "SetFamily",
    "build_set_family",
    "default_family_size",
    "pairwise_min",
    "RADIUS_SAMPLES",
    "PackingCertificate",
    "PackingFamily",
    "build_sparse_packing",
    "radius_sample_indices",
    "verify_packing",
    "greedy_epsilon_packing",
    "log_volume_packing_cap",
    "quotient_packing_cap",
    "volume_packing_cap",
]
