"""Tests for the conditional moments of the sampled cut share."""

import logging
from fractions import Fraction

import numpy as np
import pytest
from pydantic import ValidationError
from scipy.stats import binom

from errors import InvalidInputError
from moments import (
    MomentQuery,
    cond_inverse_moment,
    cond_ratio_moments,
    conditional_square_moment,
    conditioning_mass,
    deviation_bound,
    enumerate_ratio_moments,
    enumerate_square_given_total,
    preserve_alpha,
    preserve_bound,
    sample_conditioned_ratio,
)

HALF = Fraction(1, 2)


class TestInverseMoment:
    """Q(d, p, f, g)."""

    @pytest.mark.parametrize("d", [1, 3, 10, 64])
    def test_point_window(self, d):
        """f = g = d gives 1/d."""
        assert cond_inverse_moment(d, HALF, d, d, exact=True) == Fraction(1, d)

    def test_two_coin_example(self):
        """d=2, p=1/2, window [1, 2] -> 5/6."""
        assert cond_inverse_moment(2, HALF, 1, 2, exact=True) == Fraction(5, 6)
        assert cond_inverse_moment(2, 0.5, 1, 2) == pytest.approx(5 / 6)

    def test_zero_mass(self):
        """p = 1 puts no mass below d."""
        with pytest.raises(InvalidInputError):
            cond_inverse_moment(2, 1, 1, 1)

    @pytest.mark.parametrize("d, f, g, p", [(4, 0, 2, 0.5), (4, 3, 2, 0.5), (4, 1, 5, 0.5),
                                            (4, 1, 2, 0.0), (4, 1, 2, 1.5)])
    def test_bad_ranges(self, d, f, g, p):
        """0 < f <= g <= d and 0 < p <= 1."""
        with pytest.raises(InvalidInputError):
            cond_inverse_moment(d, p, f, g)

    def test_log_space_matches_direct_sum(self):
        """Above the exact limit the log-space sum agrees with scipy's pmf."""
        d, p, f, g = 200, 0.3, 40, 80
        b = np.arange(f, g + 1)
        pmf = binom.pmf(b, d, p)
        assert cond_inverse_moment(d, p, f, g) == pytest.approx((pmf / b).sum() / pmf.sum(), rel=1e-10)

    def test_exact_refused_above_limit(self):
        """Exact rationals only up to d = 64."""
        with pytest.raises(InvalidInputError):
            cond_inverse_moment(100, 0.5, 10, 90, exact=True)

    def test_bound_on_grid(self):
        """Q <= 4/(pd) wherever the window has mass >= 1/2."""
        checked = 0
        for d in range(1, 31):
            for p in (0.1, 0.25, 0.5, 0.9):
                for f in range(1, d + 1):
                    for g in range(f, d + 1, 3):
                        if conditioning_mass(d, p, f, g) < 0.5:
                            continue
                        assert cond_inverse_moment(d, p, f, g) <= 4 / (p * d) + 1e-12
                        checked += 1
        assert checked > 100


class TestRatioMoments:
    """Mean, second moment and variance of X/Y."""

    def test_plug_in_example(self):
        """c=1, d=2, p=1/2, [1, 2]: 1/2, 5/12, 1/6."""
        moments = cond_ratio_moments(1, 2, HALF, 1, 2, exact=True)
        assert (moments.mean, moments.second_moment, moments.variance) == (
            HALF, Fraction(5, 12), Fraction(1, 6))
        assert enumerate_ratio_moments(1, 2, HALF, 1, 2) == moments

    def test_single_cut_edge(self):
        """c = 1: second moment is Q/d."""
        q = cond_inverse_moment(9, Fraction(1, 3), 2, 7, exact=True)
        assert cond_ratio_moments(1, 9, Fraction(1, 3), 2, 7, exact=True).second_moment == q / 9

    def test_mean_identity_grid(self):
        """mean = c/d on a d <= 30 grid."""
        for d in range(2, 31, 4):
            for c in range(1, d + 1, 3):
                for f, g in ((1, d), (max(1, d // 4), max(1, d // 2))):
                    moments = cond_ratio_moments(c, d, 0.4, f, g)
                    assert abs(moments.mean - c / d) <= 1e-12

    @pytest.mark.parametrize("d", [3, 6, 10, 14])
    def test_second_moment_matches_enumeration(self, d):
        """The closed form equals the 2^d walk."""
        p = Fraction(2, 5)
        for c in (1, d // 2, d):
            for f, g in ((1, d), (max(1, d // 3), d - 1)):
                closed = cond_ratio_moments(c, d, p, f, g, exact=True)
                walked = enumerate_ratio_moments(c, d, p, f, g)
                assert walked.mean == closed.mean
                assert walked.second_moment == closed.second_moment

    @pytest.mark.parametrize("c, d", [(1, 5), (3, 8), (4, 10), (10, 10)])
    def test_square_given_total(self, c, d):
        """E[X^2 | Y = b] at every b."""
        for b in range(d + 1):
            assert conditional_square_moment(c, d, b) == enumerate_square_given_total(c, d, b)

    def test_monte_carlo(self):
        """c=3, d=10, p=0.4, [2, 8]: sample moments within 3 sigma."""
        sample = sample_conditioned_ratio(3, 10, 0.4, 2, 8, 1_000_000, np.random.default_rng(310))
        moments = cond_ratio_moments(3, 10, 0.4, 2, 8)
        n = sample.accepted
        assert abs(sample.mean - moments.mean) <= 3 * np.sqrt(moments.variance / n)
        centered = sample.ratios - sample.ratios.mean()
        spread = np.sqrt(((centered ** 4).mean() - sample.variance ** 2) / n)
        assert abs(sample.variance - moments.variance) <= 3 * spread
        assert sample.acceptance_rate == pytest.approx(conditioning_mass(10, 0.4, 2, 8), abs=0.003)

    def test_enumeration_limit(self):
        """2^d walks stop at d = 14."""
        with pytest.raises(InvalidInputError):
            enumerate_ratio_moments(2, 15, HALF, 1, 15)

    def test_cut_share_range(self):
        """0 < c <= d."""
        with pytest.raises(InvalidInputError):
            cond_ratio_moments(0, 5, 0.5, 1, 5)


class TestDeviationBound:
    """Chebyshev tail of the sampled share."""

    def test_preserve_example(self):
        """k = 200, c/d = 1/2 -> 1/2."""
        assert preserve_alpha(200) == pytest.approx(1.0)
        assert preserve_bound(1, 2, 200) == pytest.approx(0.5)
        assert preserve_bound(3, 7, 50) == pytest.approx(200 / 50 * 3 / 7)

    def test_large_alpha(self):
        """The bound vanishes as alpha grows."""
        assert deviation_bound(1, 2, 20, 1e6) < 1e-12

    def test_small_k_warns(self, caplog):
        """k < 10 still returns a bound, with a warning."""
        with caplog.at_level(logging.WARNING, logger="moments.conditional"):
            assert deviation_bound(1, 4, 5, 1.0) == 0.25
        assert "k=5" in caplog.text

    def test_bad_alpha(self):
        """alpha > 0."""
        with pytest.raises(InvalidInputError):
            deviation_bound(1, 2, 20, 0.0)

    @pytest.mark.parametrize("alpha", [1.0, 2.0, 3.0])
    def test_empirical_tail(self, alpha):
        """Conditioned draws exceed c/d + alpha sqrt(2/k) no more often than the bound."""
        c, d, k = 4, 40, 10
        p = 2 * k / d
        sample = sample_conditioned_ratio(c, d, p, k, min(4 * k, d), 1_000_000,
                                          np.random.default_rng(int(alpha * 10)))
        threshold = c / d + alpha * np.sqrt(2 / k)
        assert sample.tail_frequency(threshold) <= deviation_bound(c, d, k, alpha)


class TestMomentQuery:
    """Parameter validation."""

    def test_valid(self):
        """Defaults fill k and alpha."""
        query = MomentQuery(d=10, c=3, p=0.4, f=2, g=8)
        assert (query.k, query.alpha) == (10, 1.0)

    @pytest.mark.parametrize("fields", [
        {"d": 5, "c": 1, "p": 0.5, "f": 4, "g": 3},
        {"d": 5, "c": 6, "p": 0.5, "f": 1, "g": 5},
        {"d": 5, "c": 1, "p": 0.0, "f": 1, "g": 5},
        {"d": 5, "c": 1, "p": 0.5, "f": 1, "g": 6},
    ])
    def test_invalid(self, fields):
        """f <= g <= d, c <= d, p in (0, 1]."""
        with pytest.raises(ValidationError):
            MomentQuery(**fields)
