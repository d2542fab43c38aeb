"""SiV nuclear-spin indirect control: spectra, dynamics and gate synthesis."""

from ._core import (
    AmbiguityError,
    ConfigError,
    Error,
    FieldSetPoint,
    NumericalError,
    PhysicalConstants,
    StrainParams,
    SystemConfig,
    __version__,
    analyze,
    delta_theta,
    diagonalize,
    format_config,
    gate_fidelity,
    hamiltonian,
    load_config,
    pad_tau4,
    parse_config,
    propagator,
    rotating_gate,
    setpoint,
    standard_gate,
    standard_gate_names,
    sweep_delta_theta,
    sweep_precession,
    synthesize,
    two_level_propagator,
    verify,
)

__all__ = [
    "AmbiguityError",
    "ConfigError",
    "Error",
    "FieldSetPoint",
    "NumericalError",
    "PhysicalConstants",
    "StrainParams",
    "SystemConfig",
    "__version__",
    "analyze",
    "delta_theta",
    "diagonalize",
    "format_config",
    "gate_fidelity",
    "hamiltonian",
    "load_config",
    "pad_tau4",
    "parse_config",
    "propagator",
    "rotating_gate",
    "setpoint",
    "standard_gate",
    "standard_gate_names",
    "sweep_delta_theta",
    "sweep_precession",
    "synthesize",
    "two_level_propagator",
    "verify",
]
