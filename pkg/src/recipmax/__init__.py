"""Toolkit for reciprocal max-type difference equations with periodic
positive coefficients: exact simulation, eventual-periodicity detection,
sufficient-condition boundedness classification, and trajectory diagnostics.
"""

from .classifier import (Classification, NotApplicableError, SeparationReport,
                         StraddleWitness, Verdict, classify,
                         gcd_boundedness_witness, separation_witness,
                         straddle_witness)
from .empirical import (ClassTrend, PatternNotSatisfiedError, PersistenceReport,
                        ResidueClassReport, persistence_report,
                        prefix_min_subsequence, residue_class_trends,
                        small_value_pattern_check, verify_decay_bound,
                        verify_return_map_identity)
from .harness import (CASES, CaseReport, LiteratureCase, get_case, run_case,
                      suite_cases)
from .periodicity import (CycleReport, NotFound, detect_cycle, minimal_period,
                          verify_periodicity)
from .rationals import format_rational, parse_rational, random_initial
from .recurrence import (CoefficientSchedule, ConfigError, EquationConfig,
                         Mode, Trajectory, TruncationNote, simulate, step)

__version__ = "0.1.0"

__all__ = [
    "CASES", "CaseReport", "ClassTrend", "Classification",
    "CoefficientSchedule", "ConfigError", "CycleReport", "EquationConfig",
    "LiteratureCase", "Mode", "NotApplicableError", "NotFound",
    "PatternNotSatisfiedError", "PersistenceReport", "ResidueClassReport",
    "SeparationReport", "StraddleWitness", "Trajectory", "TruncationNote",
    "Verdict", "classify", "detect_cycle", "format_rational",
    "gcd_boundedness_witness", "get_case", "minimal_period", "parse_rational",
    "persistence_report", "prefix_min_subsequence", "random_initial",
    "residue_class_trends", "run_case", "separation_witness", "simulate",
    "small_value_pattern_check", "step", "straddle_witness", "suite_cases",
    "verify_decay_bound", "verify_periodicity", "verify_return_map_identity",
]
