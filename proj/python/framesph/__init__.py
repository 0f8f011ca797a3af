"""Mesh-free steady-state heat transfer for window-frame cross-sections."""

from ._core import (
    FramesphError,
    band_checks,
    cavity_properties,
    classify_ventilation,
    convective_coefficient,
    effective_conductivity,
    equivalent_rectangle,
    kernel_derivative,
    kernel_value,
    radiative_coefficient,
    reference_cases,
    simulate,
    thermal_conductance,
    thermal_transmittance,
    validate_profile_text,
)

__version__ = "0.1.0"

__all__ = [
    "FramesphError",
    "band_checks",
    "cavity_properties",
    "classify_ventilation",
    "convective_coefficient",
    "effective_conductivity",
    "equivalent_rectangle",
    "kernel_derivative",
    "kernel_value",
    "radiative_coefficient",
    "reference_cases",
    "simulate",
    "thermal_conductance",
    "thermal_transmittance",
    "validate_profile_text",
]
