"""Phase retrieval of complex fields from one densely sampled diffraction magnitude."""

from .analysis import (
    AlignmentReport,
    SweepReport,
    align_and_error,
    emergence_score,
    phase_mix,
    support_sweep,
    twin,
    window_twin,
)
from .field import (
    SamplingConfig,
    coeff_ratio,
    embed,
    extract,
    hft_forward,
    hft_inverse,
    inner_product,
    inner_product_general,
    shifted_magnitude,
    unit_phase,
)
from .hio import (
    HioParams,
    ReconResult,
    SupportMask,
    compute_S,
    derive_seed,
    hio_run,
    make_mask,
    multistart,
)
from .ingest import IngestConfig, RawFrame, bin_average, despeckle, hdr_compose, to_measurement
from .noise import NoiseParams, add_noise

__version__ = "0.1.0"

__all__ = [
    "AlignmentReport",
    "HioParams",
    "IngestConfig",
    "NoiseParams",
    "RawFrame",
    "ReconResult",
    "SamplingConfig",
    "SupportMask",
    "SweepReport",
    "add_noise",
    "align_and_error",
    "bin_average",
    "coeff_ratio",
    "compute_S",
    "derive_seed",
    "despeckle",
    "embed",
    "emergence_score",
    "extract",
    "hdr_compose",
    "hft_forward",
    "hft_inverse",
    "hio_run",
    "inner_product",
    "inner_product_general",
    "make_mask",
    "multistart",
    "phase_mix",
    "shifted_magnitude",
    "support_sweep",
    "to_measurement",
    "twin",
    "unit_phase",
    "window_twin",
]
