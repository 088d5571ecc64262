"""Sub-ideal causal smoothing filters ``H(s) = exp(-alpha (s + beta)**q)``."""

__version__ = "0.1.0"

from .complex_core import (  # noqa: E402
    DomainError,
    FilterParams,
    ReferenceParams,
    log_gain,
    principal_arg,
    principal_pow,
    reference_gain,
    transfer_eval,
)
from .design import gain_bound, make_identity_sequence, make_matched_sequence, matched_alpha  # noqa: E402
from .spectral import (  # noqa: E402
    FrequencyGrid,
    SampledSignal,
    SpectrumSamples,
    auto_grid,
    forward_transform,
    impulse_response,
    inverse_transform,
    sample_frequency_response,
)

__all__ = [
    "__version__",
    "DomainError",
    "FilterParams",
    "ReferenceParams",
    "log_gain",
    "principal_arg",
    "principal_pow",
    "reference_gain",
    "transfer_eval",
    "gain_bound",
    "make_identity_sequence",
    "make_matched_sequence",
    "matched_alpha",
    "FrequencyGrid",
    "SampledSignal",
    "SpectrumSamples",
    "auto_grid",
    "forward_transform",
    "impulse_response",
    "inverse_transform",
    "sample_frequency_response",
]
