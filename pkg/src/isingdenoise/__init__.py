"""Binary image denoising by spin-grid energy minimization.

Images are grids of +/-1 spins (white = +1, black = -1). A noisy image is
restored by minimizing a pairwise energy over candidate clean images,
either greedily (keep strictly downhill single-pixel flips) or by
simulated annealing with a Metropolis acceptance rule and a 1/k cooling
schedule. Ships with a Bernoulli flip channel, PBM I/O, restoration
metrics, an exhaustive-search oracle for small instances, and a CLI.
"""

from .metrics import EnergyTrace, agreement_percent, disagreement_count
from .model import EnergyParams, SpinImage, energy, flip_delta, neighbors
from .noise import NoiseSpec, corrupt
from .optimizers import (
    AnnealConfig,
    DenoiseReport,
    IcmConfig,
    acceptance_probability,
    denoise_icm,
    denoise_sa,
    temperature,
)
from .oracle import OracleResult, exhaustive_minimize, is_local_minimum
from .pbm import (
    PbmParseError,
    load_pbm,
    save_pbm,
    write_summary_json,
    write_trace_csv,
)
from .testimage import generate_test_image

__version__ = "0.1.0"

__all__ = [
    "SpinImage",
    "EnergyParams",
    "energy",
    "flip_delta",
    "neighbors",
    "NoiseSpec",
    "corrupt",
    "AnnealConfig",
    "IcmConfig",
    "DenoiseReport",
    "temperature",
    "acceptance_probability",
    "denoise_icm",
    "denoise_sa",
    "EnergyTrace",
    "agreement_percent",
    "disagreement_count",
    "PbmParseError",
    "load_pbm",
    "save_pbm",
    "write_trace_csv",
    "write_summary_json",
    "OracleResult",
    "exhaustive_minimize",
    "is_local_minimum",
    "generate_test_image",
    "__version__",
]
