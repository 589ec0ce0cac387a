"""The verification pipeline: each check re-runs one step of the proof."""

from .betti import EXPECTED_BETTI, BettiResult, betti_numbers, betti_step
from .calibrate import CalibrationResult, calibrate_ambiguous, calibrate_entry
from .hilbert import HilbertResult, hilbert_expected, hilbert_function
from .intersection import (
    ASSUMPTIONS,
    FitError,
    InconsistentError,
    IntersectionNumbers,
    intersection_numbers,
)
from .invariance import InvarianceOutcome, invariance_certificate
from .report import CheckRecord, VerificationReport, VerifyConfig, run_all
from .resolution import PrerequisiteError, Resolution, multiplication_matrix
from .smooth import (
    FIXED_POINTS,
    NEGATIVE_CONTROL,
    SmoothnessOutcome,
    check_point,
    fixed_point_check,
)

__all__ = [
    "ASSUMPTIONS",
    "EXPECTED_BETTI",
    "FIXED_POINTS",
    "NEGATIVE_CONTROL",
    "BettiResult",
    "CalibrationResult",
    "CheckRecord",
    "FitError",
    "HilbertResult",
    "InconsistentError",
    "IntersectionNumbers",
    "InvarianceOutcome",
    "PrerequisiteError",
    "Resolution",
    "SmoothnessOutcome",
    "VerificationReport",
    "VerifyConfig",
    "betti_numbers",
    "betti_step",
    "calibrate_ambiguous",
    "calibrate_entry",
    "check_point",
    "fixed_point_check",
    "hilbert_expected",
    "hilbert_function",
    "intersection_numbers",
    "invariance_certificate",
    "multiplication_matrix",
    "run_all",
]
