"""Kullback-Leibler divergence and the channel lower bound."""

from fractions import Fraction

import pytest

from multibayes import (
    Channel,
    Dist,
    Evidence,
    SampleSpace,
    SupportMismatchError,
    dirac,
    expected_channel_divergence,
    flrn,
    kl_divergence,
    push,
    uniform,
    vfe_update,
)
from multibayes.multiset import Multiset
from multibayes.models import medical_model

MEDICAL = medical_model()
AB = SampleSpace("ab")


class TestKlDivergence:
    def test_equal_distributions_give_zero(self):
        omega = Dist(AB, (Fraction(1, 3), Fraction(2, 3)))
        assert kl_divergence(omega, omega) == 0.0

    def test_zero_times_log_zero_convention(self):
        narrow = dirac("a", AB)
        wide = uniform(AB)
        assert kl_divergence(narrow, wide) == pytest.approx(0.6931471805599453, abs=1e-12)

    def test_support_violation(self):
        with pytest.raises(SupportMismatchError):
            kl_divergence(uniform(AB), dirac("a", AB))

    def test_asymmetry_instance(self):
        sigma = Dist(AB, (Fraction(1, 4), Fraction(3, 4)))
        rho = uniform(AB)
        assert kl_divergence(sigma, rho) != kl_divergence(rho, sigma)

    def test_medical_prediction_divergences_in_bits(self):
        observed = flrn(Multiset(MEDICAL.test_space, (1, 1)))
        prior_prediction = push(MEDICAL.test_channel, MEDICAL.prior)
        assert kl_divergence(observed, prior_prediction, base=2) == pytest.approx(
            0.0164, abs=5e-4
        )
        posterior = vfe_update(
            MEDICAL.prior, Evidence(((MEDICAL.pos_test, 1), (MEDICAL.neg_test, 1)))
        )
        posterior_prediction = push(MEDICAL.test_channel, posterior)
        assert kl_divergence(observed, posterior_prediction, base=2) == pytest.approx(
            0.0208, abs=5e-4
        )

    def test_base_two_is_scaled_natural_log(self):
        sigma = Dist(AB, (Fraction(1, 4), Fraction(3, 4)))
        rho = Dist(AB, (Fraction(2, 5), Fraction(3, 5)))
        import math

        assert kl_divergence(sigma, rho, base=2) == pytest.approx(
            kl_divergence(sigma, rho) / math.log(2), abs=1e-15
        )


class TestExpectedChannelDivergence:
    def test_constant_channel_reduces_to_row_divergence(self):
        row = Dist(AB, (Fraction(1, 3), Fraction(2, 3)))
        constant = Channel(AB, AB, (row, row))
        sigma = Dist(AB, (Fraction(1, 5), Fraction(4, 5)))
        rho = Dist(AB, (Fraction(1, 2), Fraction(1, 2)))
        assert expected_channel_divergence(sigma, rho, constant) == pytest.approx(
            kl_divergence(rho, row), abs=1e-12
        )

    def test_lower_bound_instance(self):
        c = Channel(
            AB,
            AB,
            (
                Dist(AB, (Fraction(1, 4), Fraction(3, 4))),
                Dist(AB, (Fraction(2, 3), Fraction(1, 3))),
            ),
        )
        sigma = Dist(AB, (Fraction(2, 5), Fraction(3, 5)))
        rho = Dist(AB, (Fraction(1, 2), Fraction(1, 2)))
        assert expected_channel_divergence(sigma, rho, c) >= kl_divergence(
            rho, push(c, sigma)
        ) - 1e-12
