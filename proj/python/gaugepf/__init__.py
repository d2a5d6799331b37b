"""Gauge transformations and variational BP on multi-graph models."""

from ._gaugepf import (
    ConvergenceError,
    DegenerateError,
    GuardError,
    InputError,
    LookupError,
    Model,
    bp_value,
    contract_sequence,
    edge_pair_update,
    gauge_matrix,
    load_model,
    loop_series,
    parse_model,
    solve_bp,
)

__all__ = [
    "ConvergenceError",
    "DegenerateError",
    "GuardError",
    "InputError",
    "LookupError",
    "Model",
    "bp_value",
    "contract_sequence",
    "edge_pair_update",
    "gauge_matrix",
    "load_model",
    "loop_series",
    "parse_model",
    "solve_bp",
]
