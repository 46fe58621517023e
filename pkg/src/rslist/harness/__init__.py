"""Experiment orchestration, acceptance suites and the command line."""

from .experiments import (
    CensusConfig,
    CensusReport,
    census_bad_fraction,
    certify_explicit_code,
    johnson_rows,
    johnson_table,
)
from .suites import CHECKS, SUITES, CheckResult, run_suite

__all__ = [
    "CHECKS", "SUITES", "CensusConfig", "CensusReport", "CheckResult",
    "census_bad_fraction", "certify_explicit_code", "johnson_rows", "johnson_table", "run_suite",
]
