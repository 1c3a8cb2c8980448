"""Anisotropic Orlicz-Sobolev spaces and a mountain-pass solver for periodic problems."""

from ._core import (
    ConfigError,
    GFunction,
    NumericalError,
    Problem,
    action,
    action_gradient,
    builtin_gfunctions,
    builtin_problem,
    builtin_problems,
    check_hypotheses,
    el_residual,
    embedding_constant,
    fenchel_conjugate,
    joint_norm,
    luxemburg_norm,
    modular,
    run_cli,
    simonenko_indices,
    sobolev_norm,
    solve,
)

__all__ = [
    "ConfigError",
    "GFunction",
    "NumericalError",
    "Problem",
    "action",
    "action_gradient",
    "builtin_gfunctions",
    "builtin_problem",
    "builtin_problems",
    "check_hypotheses",
    "el_residual",
    "embedding_constant",
    "fenchel_conjugate",
    "joint_norm",
    "luxemburg_norm",
    "modular",
    "run_cli",
    "simonenko_indices",
    "sobolev_norm",
    "solve",
]
