"""Design and retrospective assessment of test-retest repeatability studies."""

from ._core import (
    InfeasibleError,
    RepeatkitError,
    ValidationError,
    __version__,
    estimate_wsd,
    expected_effective_sensitivity,
    expected_effective_specificity,
    repeatability_coefficient,
    run_cli,
    sample_size_sensitivity,
    sample_size_specificity,
    sensitivity,
    sensitivity_confidence,
    sensitivity_lower_bound,
    simulate_effective_sensitivity,
    simulate_effective_specificity,
    specificity_confidence,
    specificity_lower_bound,
    specificity_probability_below,
)

__all__ = [
    "InfeasibleError",
    "RepeatkitError",
    "ValidationError",
    "__version__",
    "estimate_wsd",
    "expected_effective_sensitivity",
    "expected_effective_specificity",
    "repeatability_coefficient",
    "run_cli",
    "sample_size_sensitivity",
    "sample_size_specificity",
    "sensitivity",
    "sensitivity_confidence",
    "sensitivity_lower_bound",
    "simulate_effective_sensitivity",
    "simulate_effective_specificity",
    "specificity_confidence",
    "specificity_lower_bound",
    "specificity_probability_below",
]
