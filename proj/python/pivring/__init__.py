# Copyright 2026 The pivring Authors
# SPDX-License-Identifier: Apache-2.0
"""Binary-correlation PIV and ring throughput simulation."""

from ._pivring import (
    ConfigError,
    DimensionError,
    InputError,
    SimulationDeadlock,
    calibrate,
    compute_field,
    find_saturation,
    predict_throughput,
    simulate_throughput,
    synth_pair,
    xcorr_binary,
)

__all__ = [
    "ConfigError",
    "DimensionError",
    "InputError",
    "SimulationDeadlock",
    "calibrate",
    "compute_field",
    "find_saturation",
    "predict_throughput",
    "simulate_throughput",
    "synth_pair",
    "xcorr_binary",
]
