"""Numerical checks for argument-variation and Bernstein-index inequalities."""

from ._argvar import (
    ArgvarError,
    HypothesisError,
    ParseError,
    ValidationError,
    __version__,
    bernstein_index,
    count_zeros,
    generate_suite,
    known_checks,
    run_scenario,
    run_scenario_file,
    variation_of_argument,
)

__all__ = [
    "ArgvarError",
    "HypothesisError",
    "ParseError",
    "ValidationError",
    "__version__",
    "bernstein_index",
    "count_zeros",
    "generate_suite",
    "known_checks",
    "run_scenario",
    "run_scenario_file",
    "variation_of_argument",
]
