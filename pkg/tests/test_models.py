"""Model parameter validation and closed-form exponents."""

import numpy as np
import pytest

from levyps.functionals import FiniteFunctional
from levyps.models import (
    BernoulliCompound,
    GaussianDiagonal,
    LpCompoundPoisson,
    MODEL_KINDS,
    SkellamFamily,
    characteristic_fn,
    drift_vector,
    levy_exponent,
    truncation,
    variance_vector,
)


@pytest.fixture
def phi12():
    return FiniteFunctional.from_pairs({1: 0.7, 2: -1.1})


class TestValidation:
    def test_gaussian_requires_positive_variances(self):
        with pytest.raises(ValueError, match="positive"):
            GaussianDiagonal(np.zeros(2), np.array([1.0, 0.0]))

    def test_gaussian_shape_mismatch(self):
        with pytest.raises(ValueError, match="length"):
            GaussianDiagonal(np.zeros(3), np.ones(2))

    def test_poisson_rates_positive(self):
        with pytest.raises(ValueError, match="positive"):
            LpCompoundPoisson(np.array([1.0, -0.5]))

    def test_bernoulli_probs_strictly_interior(self):
        with pytest.raises(ValueError, match="strictly"):
            BernoulliCompound(1.0, np.array([0.5, 1.0]))

    def test_skellam_lambdas_in_unit_interval(self):
        with pytest.raises(ValueError, match="\\[0, 1\\]"):
            SkellamFamily(np.array([0.5, 1.2]))
        SkellamFamily(np.array([0.0, 1.0]))  # boundary allowed

    def test_truncation_and_kinds(self):
        model = SkellamFamily(np.full(5, 0.5))
        assert truncation(model) == 5
        assert MODEL_KINDS[type(model)] == "skellam"


class TestExponents:
    def test_gaussian_exponent_closed_form(self, phi12):
        model = GaussianDiagonal(np.array([0.5, -1.0]), np.array([2.0, 0.5]))
        got = levy_exponent(model, phi12)
        expected = 1j * (0.5 * 0.7 + (-1.0) * (-1.1)) - 0.5 * (2.0 * 0.7**2 + 0.5 * 1.1**2)
        assert got == pytest.approx(expected, abs=1e-15)

    def test_poisson_exponent_closed_form(self, phi12):
        model = LpCompoundPoisson(np.array([1.0, 2.0]))
        got = levy_exponent(model, phi12)
        expected = 1.0 * (np.exp(1j * 0.7 * 1.0) - 1) + 2.0 * (np.exp(1j * (-1.1) * 2.0) - 1)
        assert got == pytest.approx(expected, abs=1e-15)

    def test_bernoulli_exponent_closed_form(self, phi12):
        model = BernoulliCompound(2.0, np.array([0.3, 0.6]))
        inner = (0.3 * np.exp(1j * 0.7) + 0.7) * (0.6 * np.exp(-1.1j) + 0.4)
        assert levy_exponent(model, phi12) == pytest.approx(2.0 * (inner - 1), abs=1e-15)

    def test_skellam_exponent_hand_case(self):
        # weights 1/2, 1/4, 1/8; lambdas 1, 0, 1/2; phi = (pi/2, pi/2, 0):
        #   n=1: 1/2[(0-1) + i(1)(1)] = -1/2 + i/2
        #   n=2: 1/4[(0-1) + i(-1)(1)] = -1/4 - i/4
        #   n=3: zero functional coordinate contributes nothing
        model = SkellamFamily(np.array([1.0, 0.0, 0.5]))
        phi = FiniteFunctional.from_pairs({1: np.pi / 2, 2: np.pi / 2})
        assert levy_exponent(model, phi) == pytest.approx(-0.75 + 0.25j, abs=1e-14)

    def test_exponent_zero_functional_is_zero(self):
        model = SkellamFamily(np.array([0.25, 0.75]))
        assert levy_exponent(model, FiniteFunctional.zero()) == 0.0

    def test_exponent_out_of_truncation_raises(self):
        model = GaussianDiagonal(np.zeros(2), np.ones(2))
        with pytest.raises(Exception, match="truncation"):
            levy_exponent(model, FiniteFunctional.from_pairs({3: 1.0}))


class TestCharfn:
    def test_charfn_is_exp_of_t_psi(self, phi12):
        model = GaussianDiagonal(np.array([0.1, 0.2]), np.array([1.0, 1.0]))
        psi = levy_exponent(model, phi12)
        for t in (0.5, 1.0, 2.0):
            assert characteristic_fn(model, phi12, t) == pytest.approx(np.exp(t * psi))

    def test_charfn_modulus_at_most_one(self, phi12):
        for model in (
            GaussianDiagonal(np.zeros(2), np.ones(2)),
            LpCompoundPoisson(np.array([0.5, 1.5])),
            BernoulliCompound(1.0, np.array([0.3, 0.4])),
            SkellamFamily(np.array([0.25, 0.75])),
        ):
            assert abs(characteristic_fn(model, phi12, 1.0)) <= 1.0 + 1e-15

    def test_charfn_requires_positive_time(self, phi12):
        model = GaussianDiagonal(np.zeros(2), np.ones(2))
        with pytest.raises(ValueError, match="positive"):
            characteristic_fn(model, phi12, 0.0)


class TestMoments:
    def test_drift_vectors(self):
        assert np.allclose(
            drift_vector(LpCompoundPoisson(np.array([2.0, 3.0]))), [4.0, 9.0]
        )
        assert np.allclose(
            drift_vector(BernoulliCompound(2.0, np.array([0.25, 0.5]))), [0.5, 1.0]
        )
        skellam = SkellamFamily(np.array([0.75, 0.25]))
        assert np.allclose(drift_vector(skellam), [0.5 * 0.5, 0.25 * (-0.5)])

    def test_variance_vectors(self):
        assert np.allclose(
            variance_vector(GaussianDiagonal(np.zeros(2), np.array([1.5, 2.5]))),
            [1.5, 2.5],
        )
        assert np.allclose(
            variance_vector(LpCompoundPoisson(np.array([2.0, 1.0]))), [8.0, 1.0]
        )
        assert np.allclose(
            variance_vector(SkellamFamily(np.array([0.3, 0.9]))), [0.5, 0.25]
        )

    def test_skellam_weights_are_exact_dyadics(self):
        model = SkellamFamily(np.full(4, 0.5))
        assert model.weights.tolist() == [0.5, 0.25, 0.125, 0.0625]
