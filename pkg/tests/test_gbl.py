import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from digitlaw.digits import DigitPrefix
from digitlaw.gbl import (
    GblParams,
    alpha_of_size,
    conformance_sum,
    gbl_cdf,
    gbl_extended_pmf,
    gbl_pmf,
    sample_digit,
    z_inverse,
    z_transform,
)

betas = st.floats(-3.0, 3.0, allow_nan=False, allow_infinity=False)


def power_law_cdf(beta: float, top_decade: int):
    """Exact CDF on [1, 10^(top_decade+1)] of the density x^(-beta)."""
    top = 10.0 ** (top_decade + 1)
    if abs(1.0 - beta) < 1e-9:
        return lambda t: math.log(t) / math.log(top)
    s = 1.0 - beta
    return lambda t: (t**s - 1.0) / (top**s - 1.0)


class TestPmf:
    def test_uniform_case(self):
        for d in range(1, 10):
            assert gbl_pmf(d, 0.0) == pytest.approx(1.0 / 9.0, abs=1e-15)

    def test_benford_branch(self):
        for d in range(1, 10):
            assert gbl_pmf(d, 1.0) == math.log10(1.0 + 1.0 / d)

    def test_benford_continuity(self):
        for d in range(1, 10):
            target = math.log10(1.0 + 1.0 / d)
            assert abs(gbl_pmf(d, 1.0 + 1e-8) - target) < 1e-6
            assert abs(gbl_pmf(d, 1.0 - 1e-8) - target) < 1e-6

    @given(betas)
    def test_normalization(self, beta):
        assert sum(gbl_pmf(d, beta) for d in range(1, 10)) == pytest.approx(
            1.0, abs=1e-12
        )

    @given(betas)
    def test_monotone_decreasing_for_positive_beta(self, beta):
        pmf = [gbl_pmf(d, abs(beta) + 0.01) for d in range(1, 10)]
        assert all(a > b for a, b in zip(pmf, pmf[1:]))

    def test_digit_validation(self):
        for bad in (0, 10, -1, "x", None):
            with pytest.raises(ValueError):
                gbl_pmf(bad, 0.5)

    def test_accepts_numpy_integers(self):
        assert gbl_pmf(np.int64(3), 1.0) == gbl_pmf(3, 1.0)


class TestExtendedPmf:
    def test_k1_reduction(self):
        for beta in (-2.0, 0.0, 0.3, 1.0, 2.5):
            for d in range(1, 10):
                assert gbl_extended_pmf(d, beta, k=1) == gbl_pmf(d, beta)

    def test_uniform_two_digit(self):
        for D in (10, 42, 99):
            assert gbl_extended_pmf(D, 0.0, k=2) == pytest.approx(1 / 90, abs=1e-15)

    def test_three_digit_normalization_at_0_06(self):
        total = sum(gbl_extended_pmf(D, 0.06, k=3) for D in range(100, 1000))
        assert total == pytest.approx(1.0, abs=1e-12)

    @given(betas, st.integers(1, 3))
    def test_normalization(self, beta, k):
        lo, hi = 10 ** (k - 1), 10**k
        total = sum(gbl_extended_pmf(D, beta, k=k) for D in range(lo, hi))
        assert total == pytest.approx(1.0, abs=1e-12)

    @given(betas)
    def test_marginalizes_to_first_digit(self, beta):
        for d in range(1, 10):
            marginal = sum(
                gbl_extended_pmf(10 * d + j, beta, k=2) for j in range(10)
            )
            assert marginal == pytest.approx(gbl_pmf(d, beta), abs=1e-12)

    def test_prefix_object_and_bare_int(self):
        assert gbl_extended_pmf(DigitPrefix(120, 3), 0.5) == gbl_extended_pmf(
            120, 0.5, k=3
        )
        with pytest.raises(ValueError):
            gbl_extended_pmf(120, 0.5)  # bare int needs k
        with pytest.raises(ValueError):
            gbl_extended_pmf(5, 0.5, k=2)  # not a 2-digit prefix


class TestAlphaOfSize:
    def test_reference_value(self):
        # 1/(ln 10^6 - 1.1), checked against a 50-digit evaluation
        got = alpha_of_size(10**6, 1.1)
        assert got == pytest.approx(0.07864410913281471, rel=1e-15)
        assert f"{got:.6f}" == "0.078644"

    def test_high_precision_cross_check(self):
        mpmath = pytest.importorskip("mpmath")
        mpmath.mp.dps = 50
        for N, a in ((10**4, 1.1), (10**6, 1.1), (10**8, 2.92)):
            want = float(1 / (mpmath.log(N) - mpmath.mpf(str(a))))
            assert alpha_of_size(N, a) == pytest.approx(want, rel=1e-14)

    def test_domain(self):
        with pytest.raises(ValueError):
            alpha_of_size(2, 1.1)  # ln 2 < 1.1
        with pytest.raises(ValueError):
            alpha_of_size(0, 1.1)
        with pytest.raises(ValueError):
            alpha_of_size(-5, 1.1)

    def test_shrinks_with_size(self):
        vals = [alpha_of_size(10**e, 1.1) for e in range(2, 12)]
        assert all(a > b > 0 for a, b in zip(vals, vals[1:]))


class TestCdf:
    def test_total_mass(self):
        for beta in (-2.0, 0.0, 0.5, 1.0, 3.0):
            assert gbl_cdf(9, beta) == pytest.approx(1.0, abs=1e-15)

    def test_uniform_first_bin(self):
        assert gbl_cdf(1, 0.0) == pytest.approx(1.0 / 9.0, abs=1e-15)

    def test_benford_closed_form_matches_pmf_sums(self):
        for y in range(1, 10):
            assert gbl_cdf(y, 1.0) == pytest.approx(math.log10(y + 1), abs=1e-15)
            cumulative = sum(gbl_pmf(d, 1.0) for d in range(1, y + 1))
            assert gbl_cdf(y, 1.0) == pytest.approx(cumulative, abs=1e-12)

    @given(betas, st.integers(1, 9))
    def test_consistent_with_pmf(self, beta, y):
        lhs = gbl_cdf(y, beta)
        rhs = sum(gbl_pmf(d, beta) for d in range(1, y + 1))
        assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_validation(self):
        for bad in (0, 10, 4.5):
            with pytest.raises(ValueError):
                gbl_cdf(bad, 0.5)


class TestSampler:
    def test_lower_boundary(self):
        for beta in (-2.0, 0.0, 1.0, 2.5):
            assert sample_digit(0.0, beta) == 1

    def test_uniform_midpoint(self):
        # at beta = 0 the formula reduces to floor(9u + 1)
        assert sample_digit(0.5, 0.0) == 5
        assert sample_digit(0.999, 0.0) == 9

    def test_domain(self):
        with pytest.raises(ValueError):
            sample_digit(1.0, 0.5)
        with pytest.raises(ValueError):
            sample_digit(-0.01, 0.5)

    @given(st.floats(0.0, 1.0, exclude_max=True), betas)
    def test_agrees_with_cdf(self, u, beta):
        d = sample_digit(u, beta)
        assert 1 <= d <= 9
        # u must land in digit d's cdf bin, up to boundary roundoff
        lo = gbl_cdf(d - 1, beta) if d > 1 else 0.0
        hi = gbl_cdf(d, beta)
        assert lo - 1e-9 <= u <= hi + 1e-9

    def test_quadrature_recovers_pmf(self):
        beta = 0.0786
        n = 10**5
        hits = np.zeros(10)
        for i in range(n):
            hits[sample_digit(i / n, beta)] += 1
        for d in range(1, 10):
            assert hits[d] / n == pytest.approx(gbl_pmf(d, beta), abs=1e-4)

    def test_seeded_monte_carlo_chi2(self):
        beta = 0.0786
        rng = np.random.default_rng(20260816)
        u = rng.random(10**6)
        s = 1.0 - beta
        digits = ((10.0**s - 1.0) * u + 1.0) ** (1.0 / s)
        digits = np.clip(digits.astype(np.int64), 1, 9)
        # the vectorized map is the same function: spot-check 1000 points
        for v in u[:1000]:
            assert sample_digit(float(v), beta) == int(
                np.clip(int(((10.0**s - 1.0) * v + 1.0) ** (1.0 / s)), 1, 9)
            )
        counts = np.bincount(digits, minlength=10)[1:]
        model = np.array([gbl_pmf(d, beta) for d in range(1, 10)])
        emp = counts / counts.sum()
        chi2 = counts.sum() * float(np.sum((emp - model) ** 2 / model))
        assert chi2 < 14.07  # 5% critical value at 7 dof


class TestZTransform:
    def test_decade_boundary_is_zero(self):
        for beta in (-1.0, 0.0, 1.0, 2.0):
            for t in (1.0, 10.0, 1000.0, 10**6):
                assert z_transform(t, beta) == 0.0

    def test_upper_boundary_approaches_one(self):
        z = z_transform(10.0 - 1e-9, 0.0)
        assert 0.999999999 < z < 1.0

    def test_boundary_neighbours_classified_exactly(self):
        # string-based decade index: no log10 roundoff at the seam
        assert z_transform(999.9999999, 0.0) > 0.99
        assert z_transform(1000.0000001, 0.0) < 1e-9

    @given(st.floats(0.0, 1.0), betas, st.integers(0, 5))
    def test_inverse_round_trip(self, z, beta, decade):
        v = z_inverse(z, beta)
        assert 1.0 <= v <= 10.0
        if v < 10.0:  # v = 10 folds to the next decade where z = 0
            assert z_transform(v * 10.0**decade, beta) == pytest.approx(
                z, abs=1e-9
            )

    def test_validation(self):
        with pytest.raises(ValueError):
            z_transform(0.0, 0.5)
        with pytest.raises(ValueError):
            z_transform(math.inf, 0.5)
        with pytest.raises(ValueError):
            z_inverse(1.5, 0.5)


class TestConformanceSum:
    def test_zero_point(self):
        F = power_law_cdf(0.4, 3)
        assert conformance_sum(F, 0.4, 3, 0.0) == 0.0

    def test_unit_point(self):
        F = power_law_cdf(0.4, 3)
        assert conformance_sum(F, 0.4, 3, 1.0) == pytest.approx(1.0, abs=1e-12)

    @given(st.floats(0.0, 1.0), st.sampled_from([-0.5, 0.0, 0.0786, 0.5, 1.0]))
    def test_identity_for_conformant_cdf(self, z, beta):
        F = power_law_cdf(beta, 4)
        assert conformance_sum(F, beta, 4, z) == pytest.approx(z, abs=1e-12)

    def test_rejects_decreasing_cdf(self):
        with pytest.raises(ValueError, match="nondecreasing"):
            conformance_sum(lambda t: 1.0 / t, 0.5, 2, 0.5)

    def test_rejects_negative_decade(self):
        with pytest.raises(ValueError):
            conformance_sum(power_law_cdf(0.5, 2), 0.5, -1, 0.5)


class TestGblParams:
    def test_benford_flag(self):
        assert GblParams(1.0).is_benford
        assert GblParams(1.0 + 1e-10).is_benford
        assert not GblParams(0.9).is_benford

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            GblParams(math.nan)
