"""Fourier series windowed by plateau bump functions.

Coefficients are computed with an FFT-assembled trapezoid rule; partial
sums reconstruct the signal on the window's plateau, and the bounds module
provides the floor constants, error envelopes and exact combinatorial
constants that control the reconstruction error.
"""

from .bounds import (
    k2_constant,
    k_inf_constant,
    k_small,
    ks_closed,
    ks_log_approx,
    ks_log_exact,
    ks_sum,
    ks_upper,
    l2_error_envelope,
    lipschitz_bound,
    measured_lipschitz,
    smoothness_data,
    sup_error_envelope,
)
from .corpus import FUNCTIONS, PRESETS, get_preset
from .estimator import WindowedFourierSeries
from .reconstruct import measure_errors, partial_sum, reconstruct
from .spectral import (
    CoefficientSet,
    QuadratureGrid,
    coefficients_direct,
    coefficients_fft,
    extended_coefficients,
)
from .windows import AnalysisFrame, SampledFunction, WindowSpec, window_eval

__version__ = "0.1.0"

__all__ = [
    "AnalysisFrame",
    "WindowSpec",
    "SampledFunction",
    "window_eval",
    "QuadratureGrid",
    "CoefficientSet",
    "coefficients_fft",
    "coefficients_direct",
    "extended_coefficients",
    "partial_sum",
    "reconstruct",
    "measure_errors",
    "k_small",
    "ks_sum",
    "ks_closed",
    "ks_upper",
    "ks_log_approx",
    "ks_log_exact",
    "k_inf_constant",
    "k2_constant",
    "sup_error_envelope",
    "l2_error_envelope",
    "lipschitz_bound",
    "smoothness_data",
    "measured_lipschitz",
    "FUNCTIONS",
    "PRESETS",
    "get_preset",
    "WindowedFourierSeries",
]
