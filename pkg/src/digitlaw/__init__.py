"""digitlaw: size-dependent first-digit laws of primes and zeta zeros.

The package covers the full desk-scale pipeline: exact digit extraction
and histograms, the generalized Benford family (pmf, cdf, sampling, the
within-decade z machinery), a segmented prime sieve with the counting
functions pi/li/L, zeta-zero table ingestion with the mean counting
formula, a seeded Cramer pseudo-prime model, exponent and size-constant
fitting with the chi-square/m/MAD/r battery, and digit-driven random
walks. The `digitlaw` CLI batch-produces all tables as CSV/JSON.
"""

__version__ = "0.1.0"

from .cramer import CramerRun, cramer_sequence, expected_count
from .digits import (
    DigitHistogram,
    DigitPrefix,
    digit_histogram,
    histogram_to_csv,
    integer_range_histogram,
    leading_prefix,
    merge_histograms,
)
from .gbl import (
    GblParams,
    alpha_of_size,
    conformance_sum,
    gbl_cdf,
    gbl_extended_pmf,
    gbl_pmf,
    sample_digit,
    z_transform,
)
from .primes import (
    CountingTable,
    PrimeSegment,
    counting_table,
    expansion_error_coeff,
    l_count,
    li,
    prime_count,
    primes_in_range,
    sieve_decade_profile,
)
from .stats import (
    FitResult,
    TestReport,
    conformance_chi2,
    conformance_correlation,
    fit_alpha_moments,
    fit_size_constant,
    test_report,
)
from .walk import DEFAULT_RULE, StepRule, Trajectory, walk_trajectory
from .zeros import (
    ZeroTable,
    bundled_zeros_path,
    load_zeros,
    rvm_count,
    zeros_alpha_of_size,
)

__all__ = [
    "__version__",
    "CramerRun", "cramer_sequence", "expected_count",
    "DigitHistogram", "DigitPrefix", "digit_histogram", "histogram_to_csv",
    "integer_range_histogram", "leading_prefix", "merge_histograms",
    "GblParams", "alpha_of_size", "conformance_sum", "gbl_cdf",
    "gbl_extended_pmf", "gbl_pmf", "sample_digit", "z_transform",
    "CountingTable", "PrimeSegment", "counting_table",
    "expansion_error_coeff", "l_count", "li", "prime_count",
    "primes_in_range", "sieve_decade_profile",
    "FitResult", "TestReport", "conformance_chi2", "conformance_correlation",
    "fit_alpha_moments", "fit_size_constant", "test_report",
    "DEFAULT_RULE", "StepRule", "Trajectory", "walk_trajectory",
    "ZeroTable", "bundled_zeros_path", "load_zeros", "rvm_count",
    "zeros_alpha_of_size",
]
