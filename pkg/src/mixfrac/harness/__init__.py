"""Presets, convergence studies, table regression and the command line."""
from .checks import CheckResult, kernel_property_suite, parse_nu_range, stability_ladder, stability_verdict
from .config import ConfigError, RunConfig
from .presets import PRESETS, Case, build_case
from .regression import RegressionResult, TolerancePolicy, regression_check
from .study import ConvergenceReport, ConvergenceRow, convergence_orders, convergence_study, emit, parse_csv
from .tables import TABLES

__all__ = [
    "CheckResult", "kernel_property_suite", "parse_nu_range", "stability_ladder", "stability_verdict",
    "ConfigError", "RunConfig", "PRESETS", "Case", "build_case",
    "RegressionResult", "TolerancePolicy", "regression_check",
    "ConvergenceReport", "ConvergenceRow", "convergence_orders", "convergence_study", "emit", "parse_csv",
    "TABLES",
]
