"""Core constants for subnoether."""

# Numeric oracle defaults
DEFAULT_ORACLE_POINTS = 20
DEFAULT_SEED = 0
DEFAULT_MAX_RETRIES = 8
NUMERATOR_BOUND = 12  # Point coordinates are p/q with 0 < |p| <= bound
DENOMINATOR_BOUND = 6
INSTANTIATION_DEGREE = 3  # Max degree of random polynomials standing in for f

# Rewriting limits
MAX_REDUCTION_STEPS = 5000
MAX_INVERSION_STEPS = 200
DERIVATIVE_CACHE_SIZE = 65536  # Memoized total derivatives shared by all contexts

# Parallel check execution
DEFAULT_MAX_WORKERS = 8

# Check verdicts
VERDICT_PASS = "PASS"
VERDICT_FAIL = "FAIL"
VERDICT_SKIPPED = "SKIPPED"
VERDICT_INFO = "INFO"
VERDICTS = (VERDICT_PASS, VERDICT_FAIL, VERDICT_SKIPPED, VERDICT_INFO)

# CLI exit codes
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_DOCUMENT_ERROR = 2

SEED_ENV_VAR = "SUBNOETHER_SEED"

__all__ = [
    "DEFAULT_ORACLE_POINTS",
    "DEFAULT_SEED",
    "DEFAULT_MAX_RETRIES",
    "NUMERATOR_BOUND",
    "DENOMINATOR_BOUND",
    "INSTANTIATION_DEGREE",
    "MAX_REDUCTION_STEPS",
    "MAX_INVERSION_STEPS",
    "DERIVATIVE_CACHE_SIZE",
    "DEFAULT_MAX_WORKERS",
    "VERDICT_PASS",
    "VERDICT_FAIL",
    "VERDICT_SKIPPED",
    "VERDICT_INFO",
    "VERDICTS",
    "EXIT_OK",
    "EXIT_CHECK_FAILED",
    "EXIT_DOCUMENT_ERROR",
    "SEED_ENV_VAR",
]
