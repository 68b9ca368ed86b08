import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from digitlaw.digits import DigitHistogram
from digitlaw.gbl import GblParams, alpha_of_size, gbl_pmf
from digitlaw.stats import (
    CHI2_CRITICAL,
    DOF,
    MAD_BANDS,
    conformance_chi2,
    conformance_correlation,
    decade_first_digit_distribution,
    fit_alpha_moments,
    fit_size_constant,
    mad_classification,
    test_report,
)

# first-digit counts of the 78498 primes below 1e6, frozen from the sieve
PRIME_COUNTS_1E6 = {
    1: 9585, 2: 9142, 3: 8960, 4: 8747, 5: 8615,
    6: 8458, 7: 8435, 8: 8326, 9: 8230,
}

ALPHA_1E6 = 0.07864410913281471  # alpha_of_size(1e6, 1.1)


def hist_from_counts(counts: dict[int, int]) -> DigitHistogram:
    return DigitHistogram(1, dict(counts), sum(counts.values()))


def law_histogram(beta: float, scale: int = 10**12) -> DigitHistogram:
    """Histogram whose frequencies follow the law to ~1/scale."""
    counts = {d: round(gbl_pmf(d, beta) * scale) for d in range(1, 10)}
    return hist_from_counts(counts)


def power_law_cdf(beta: float, top_decade: int):
    """The exactly law-conformant CDF on [1, 10^(top_decade+1)]."""
    top = 10.0 ** (top_decade + 1)
    s = 1.0 - beta
    if abs(s) < 1e-12:
        return lambda t: math.log(t) / math.log(top)
    norm = top**s - 1.0
    return lambda t: (t**s - 1.0) / norm


class TestBattery:
    def test_primes_1e6_frozen_values(self):
        hist = hist_from_counts(PRIME_COUNTS_1E6)
        report = test_report(hist, GblParams(ALPHA_1E6), alpha=ALPHA_1E6, N=10**6)
        assert report.chi2 == pytest.approx(0.6711801191929225, rel=1e-9)
        assert report.m == pytest.approx(0.0005502253884959035, rel=1e-9)
        assert report.mad == pytest.approx(0.00027061598871112717, rel=1e-9)
        assert report.r == pytest.approx(0.9982657179743689, rel=1e-9)
        assert report.mad_class == "close"
        assert report.dof == DOF == 7
        assert not any(report.chi2_decision.values())

    def test_near_perfect_fit(self):
        report = test_report(law_histogram(1.0), GblParams(1.0))
        assert report.chi2 < 1e-6
        assert report.m < 1e-9
        assert report.mad < 1e-9
        assert report.r > 1 - 1e-9
        assert report.mad_class == "close"

    def test_critical_values(self):
        assert CHI2_CRITICAL == {"p10": 12.02, "p05": 14.07, "p01": 18.47}
        hist = hist_from_counts({d: 1000 if d > 1 else 8000 for d in range(1, 10)})
        report = test_report(hist, GblParams(0.0))
        assert report.chi2 > CHI2_CRITICAL["p01"]
        assert report.chi2_decision == {"p10": True, "p05": True, "p01": True}

    @given(
        counts=st.lists(st.integers(1, 10**6), min_size=9, max_size=9),
        beta=st.floats(-1.0, 1.0),
    )
    def test_chi2_scales_with_sample_size(self, counts, beta):
        base = hist_from_counts(dict(zip(range(1, 10), counts)))
        scaled = hist_from_counts({d: 10 * c for d, c in base.counts.items()})
        model = GblParams(beta)
        r1 = test_report(base, model)
        r10 = test_report(scaled, model)
        assert r10.chi2 == pytest.approx(10 * r1.chi2, rel=1e-6)
        # shape statistics are scale-free
        assert r10.m == pytest.approx(r1.m, rel=1e-12)
        assert r10.mad == pytest.approx(r1.mad, rel=1e-12)

    def test_mad_bands_half_open(self):
        assert MAD_BANDS == (0.004, 0.008, 0.012)
        assert mad_classification(0.0) == "close"
        assert mad_classification(0.0039999) == "close"
        assert mad_classification(0.004) == "acceptable"
        assert mad_classification(0.0079999) == "acceptable"
        assert mad_classification(0.008) == "marginal"
        assert mad_classification(0.012) == "nonconforming"
        assert mad_classification(0.5) == "nonconforming"

    def test_json_dict_keys(self):
        report = test_report(
            law_histogram(0.1), GblParams(0.1), alpha=0.1, N=1000, sequence="primes"
        )
        payload = report.to_json_dict()
        assert set(payload) == {
            "chi2", "dof", "chi2_critical", "m", "mad",
            "mad_class", "r", "alpha", "N", "sequence",
        }
        assert payload["sequence"] == "primes"
        assert payload["N"] == 1000
        assert "chi2_decision" not in payload

    def test_uniform_model_r_is_nan(self):
        # no correlation is defined against a constant model profile
        hist = hist_from_counts({d: 100 + d for d in range(1, 10)})
        report = test_report(hist, GblParams(0.0))
        assert math.isnan(report.r)
        assert math.isfinite(report.chi2)

    def test_validation(self):
        with pytest.raises(ValueError, match="k=1"):
            test_report(DigitHistogram(2, {10: 1}, 1), GblParams(0.0))
        with pytest.raises(ValueError, match="empty"):
            test_report(DigitHistogram(1), GblParams(0.0))


class TestFitAlphaMoments:
    def test_uniform_digits_give_zero(self):
        hist = hist_from_counts({d: 12345 for d in range(1, 10)})
        result = fit_alpha_moments(hist)
        assert result.alpha == 0.0
        assert result.iterations == 1
        assert result.sign == "primes"
        assert result.beta == 0.0

    def test_benford_digits_give_one(self):
        result = fit_alpha_moments(law_histogram(1.0))
        assert result.alpha == pytest.approx(1.0, abs=1e-8)

    @given(beta=st.floats(-1.5, 1.5))
    def test_round_trip_both_signs(self, beta):
        hist = law_histogram(beta)
        primes_fit = fit_alpha_moments(hist, sign="primes")
        zeros_fit = fit_alpha_moments(hist, sign="zeros")
        assert primes_fit.beta == pytest.approx(beta, abs=1e-8)
        assert zeros_fit.beta == pytest.approx(beta, abs=1e-8)
        assert zeros_fit.alpha == pytest.approx(-beta, abs=1e-8)
        assert primes_fit.residual < 1e-10

    def test_primes_1e8_exponent(self, primes_profile_1e8):
        hist = primes_profile_1e8.histogram(10**8, 1)
        result = fit_alpha_moments(hist)
        assert result.alpha == pytest.approx(0.0577, abs=0.002)

    def test_validation(self):
        with pytest.raises(ValueError, match="k=1"):
            fit_alpha_moments(DigitHistogram(2, {10: 1}, 1))
        with pytest.raises(ValueError, match="empty"):
            fit_alpha_moments(DigitHistogram(1))
        with pytest.raises(ValueError, match="achievable"):
            fit_alpha_moments(hist_from_counts({1: 100}))
        with pytest.raises(ValueError, match="achievable"):
            fit_alpha_moments(hist_from_counts({9: 100}))


class TestFitSizeConstant:
    def test_exact_recovery_primes_range(self):
        a_true = 1.1
        points = [(10.0**e, 1.0 / (e * math.log(10) - a_true)) for e in range(4, 10)]
        assert abs(fit_size_constant(points) - a_true) < 1e-9

    def test_exact_recovery_zeros_range(self):
        a_true = 2.92
        points = [(10.0**e, 1.0 / (e * math.log(10) - a_true)) for e in range(3, 6)]
        assert abs(fit_size_constant(points) - a_true) < 1e-9

    @given(a_true=st.floats(0.5, 2.5))
    def test_round_trip(self, a_true):
        points = [(10.0**e, 1.0 / (e * math.log(10) - a_true)) for e in range(4, 9)]
        assert abs(fit_size_constant(points) - a_true) < 1e-9

    def test_tolerates_noise(self):
        a_true = 1.1
        noise = [3e-4, -2e-4, 1e-4, -3e-4, 2e-4, -1e-4]
        points = [
            (10.0**e, 1.0 / (e * math.log(10) - a_true) + eps)
            for e, eps in zip(range(4, 10), noise)
        ]
        assert abs(fit_size_constant(points) - a_true) < 0.05

    def test_validation(self):
        with pytest.raises(ValueError, match="two"):
            fit_size_constant([(10**4, 0.1)])
        with pytest.raises(ValueError, match="degenerate"):
            fit_size_constant([(10**4, 0.1), (10**4, 0.2)])
        with pytest.raises(ValueError, match="positive"):
            fit_size_constant([(10**4, 0.1), (10**5, -0.1)])


class TestConformance:
    @pytest.mark.parametrize("beta", [-0.5, 0.0, 0.0786, 0.5, 1.0])
    def test_chi2_vanishes_for_conformant_cdf(self, beta):
        F = power_law_cdf(beta, top_decade=5)
        assert conformance_chi2(F, beta, top_decade=5) < 1e-12

    def test_chi2_positive_for_mismatched_exponent(self):
        F = power_law_cdf(0.5, top_decade=5)
        assert conformance_chi2(F, 0.0, top_decade=5) > 1e-3

    def test_chi2_requires_normalized_cdf(self):
        F = power_law_cdf(0.1, top_decade=5)
        with pytest.raises(ValueError, match="normalized"):
            conformance_chi2(F, 0.1, top_decade=4)

    def test_decade_distribution_sums_to_one(self):
        F = power_law_cdf(0.3, top_decade=6)
        pr = decade_first_digit_distribution(F, 6)
        assert pr.shape == (9,)
        assert float(pr.sum()) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("beta", [0.0, 0.0786, 1.0])
    def test_correlation_is_one_for_conformant_cdf(self, beta):
        F = power_law_cdf(beta, top_decade=5)
        assert conformance_correlation(F, beta, top_decade=5) > 1 - 1e-12

    def test_correlation_grid_validation(self):
        F = power_law_cdf(0.1, top_decade=3)
        with pytest.raises(ValueError, match="grid"):
            conformance_correlation(F, 0.1, top_decade=3, grid=9)


class TestAlphaOfSizeIntegration:
    def test_fit_recovers_size_law_through_histograms(self):
        # alpha(N) -> synthetic law counts -> moment fit -> size-constant fit
        a_true = 1.1
        points = []
        for e in range(4, 9):
            n = 10**e
            alpha = alpha_of_size(n, a_true)
            fitted = fit_alpha_moments(law_histogram(alpha)).alpha
            points.append((float(n), fitted))
        assert abs(fit_size_constant(points) - a_true) < 1e-6

    def test_reference_alpha(self):
        assert alpha_of_size(10**6, 1.1) == pytest.approx(ALPHA_1E6, rel=1e-15)
