"""Dephasing of a two-level impurity coupled to a bath of Morse oscillators.

The package computes the exact factorized decay factor chi(t) of the
impurity coherence, the Gaussian (second-order) surrogate built from the
bath correlation function, and the analysis quantities derived from
them: dephasing times, information backflow, and the exact-vs-Gaussian
error.
"""

from .bath import BathConfig, BathMode, discretize, mode_thermal, spectral_density
from .config import ConfigError, ExperimentConfig, parse_config, parse_config_text
from .correlation import (
    CorrelationModel,
    alpha,
    build_correlation,
    gamma_decay,
    gaussian_chi,
    mean_field_shift,
    offset_ratio,
)
from .dynamics import (
    DEFAULT_RHO0,
    DephasingTrace,
    ModePropagators,
    SystemConfig,
    apply_map,
    chi_series,
    gaussian_trace,
    mode_factor,
    mode_propagators,
    spin_chi,
    time_grid,
)
from .kernels import backend_name
from .morse import (
    MorseParams,
    MorseSpectrum,
    RegionTag,
    bound_energies,
    bound_state_count,
    ladder_matrix,
    region_classify,
    spectrum,
    wavefunction,
    x_matrix,
)
from .observables import (
    ErrorReport,
    FlowReport,
    blp_flows,
    dephasing_time,
    gaussian_error,
    trace_distance,
)
from .oracle import dense_chi, overlap_element, quadrature_element
from .specfun import digamma, log_gamma

__version__ = "0.1.0"

__all__ = [
    "BathConfig", "BathMode", "ConfigError", "CorrelationModel", "DEFAULT_RHO0",
    "DephasingTrace", "ErrorReport", "ExperimentConfig", "FlowReport",
    "ModePropagators", "MorseParams", "MorseSpectrum", "RegionTag", "SystemConfig",
    "alpha", "apply_map", "backend_name", "blp_flows", "bound_energies",
    "bound_state_count", "build_correlation", "chi_series", "dense_chi",
    "dephasing_time", "digamma", "discretize", "gamma_decay", "gaussian_chi",
    "gaussian_error", "gaussian_trace", "ladder_matrix", "log_gamma",
    "mean_field_shift", "mode_factor", "mode_propagators", "mode_thermal",
    "offset_ratio", "overlap_element", "parse_config", "parse_config_text",
    "quadrature_element", "region_classify", "spectral_density", "spectrum",
    "spin_chi", "time_grid", "trace_distance", "wavefunction", "x_matrix",
]
