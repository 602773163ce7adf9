"""Numerical laboratory for derivative nonlinear Schrodinger estimates."""

from ._impl import (
    ConfigError,
    Error,
    GridSpec,
    ParseError,
    __version__,
    describe_case,
    duhamel,
    evaluate,
    free_evolve,
    list_cases,
    maximal_exponent,
    measure,
    modulation_check,
    parse_polynomial,
    project,
    psi,
    run,
    sobolev_norm,
    verify_dec,
    xs_norm,
)

__all__ = [
    "ConfigError",
    "Error",
    "GridSpec",
    "ParseError",
    "__version__",
    "describe_case",
    "duhamel",
    "evaluate",
    "free_evolve",
    "list_cases",
    "maximal_exponent",
    "measure",
    "modulation_check",
    "parse_polynomial",
    "project",
    "psi",
    "run",
    "sobolev_norm",
    "verify_dec",
    "xs_norm",
]
