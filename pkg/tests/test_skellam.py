"""Difference-of-Poissons laws against direct convolution references."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levyps.functionals import FiniteFunctional
from levyps.models import SkellamFamily, levy_exponent
from levyps.skellam import (
    DiscriminationResult,
    SkellamParams,
    coordinate_exponent,
    coordinate_params,
    discriminate,
    prob_zero,
    psi_lambda,
    skellam_pmf,
    unit_inner_product,
)
from oracles import coordinate_charfn_reference, skellam_pmf_reference

# Reference values frozen from scipy routes the library never touches:
# exp(-1) * iv(0, 1) for the symmetric case, the 80-term Poisson
# convolution for the asymmetric one.
PMF_HALF_HALF_AT_0 = 0.4657596075936405
PMF_1P5_0P5_AT_2 = 0.19406777038855064


class TestParams:
    def test_coerces_to_float(self):
        p = SkellamParams(1, 2)
        assert isinstance(p.mu1, float) and isinstance(p.mu2, float)

    @pytest.mark.parametrize("bad", [(-0.1, 1.0), (1.0, -2.0), (np.inf, 1.0), (1.0, np.nan)])
    def test_rejects_bad_intensities(self, bad):
        with pytest.raises(ValueError, match="non-negative"):
            SkellamParams(*bad)


class TestPmf:
    def test_frozen_symmetric_value(self):
        assert skellam_pmf(SkellamParams(0.5, 0.5), 0) == pytest.approx(
            PMF_HALF_HALF_AT_0, rel=1e-13
        )

    def test_frozen_asymmetric_value(self):
        assert skellam_pmf(SkellamParams(1.5, 0.5), 2) == pytest.approx(
            PMF_1P5_0P5_AT_2, rel=1e-13
        )

    def test_matches_convolution_on_grid(self):
        mus = [0.0, 0.1, 0.5, 1.0, 2.0, 2.5]
        for mu1 in mus:
            for mu2 in mus:
                if mu1 + mu2 > 5.0:
                    continue
                params = SkellamParams(mu1, mu2)
                for k in range(-20, 21):
                    ref = skellam_pmf_reference(mu1, mu2, k)
                    assert abs(skellam_pmf(params, k) - ref) < 1e-10

    def test_total_mass(self):
        for mu1, mu2 in [(0.5, 0.5), (2.0, 1.0), (0.0, 3.0), (4.0, 0.7)]:
            total = sum(skellam_pmf(SkellamParams(mu1, mu2), k) for k in range(-60, 61))
            assert abs(total - 1.0) < 1e-12

    def test_degenerate_both_zero(self):
        p = SkellamParams(0.0, 0.0)
        assert skellam_pmf(p, 0) == 1.0
        assert skellam_pmf(p, 1) == 0.0
        assert skellam_pmf(p, -3) == 0.0

    def test_degenerate_one_sided(self):
        # only the upward stream: plain Poisson, nothing below zero
        p = SkellamParams(1.3, 0.0)
        assert skellam_pmf(p, -1) == 0.0
        assert skellam_pmf(p, 2) == pytest.approx(
            math.exp(-1.3) * 1.3**2 / 2.0, rel=1e-14
        )
        q = SkellamParams(0.0, 1.3)
        assert skellam_pmf(q, -2) == skellam_pmf(p, 2)

    def test_swap_symmetry_is_exact(self):
        # swapping the streams and negating k walks the same float sequence
        for mu1, mu2 in [(0.7, 1.9), (2.5, 0.01)]:
            for k in range(-10, 11):
                assert skellam_pmf(SkellamParams(mu1, mu2), k) == skellam_pmf(
                    SkellamParams(mu2, mu1), -k
                )

    @given(
        mu1=st.floats(0.0, 5.0),
        mu2=st.floats(0.0, 5.0),
        k=st.integers(-25, 25),
    )
    @settings(max_examples=300, deadline=None)
    def test_matches_convolution_property(self, mu1, mu2, k):
        ref = skellam_pmf_reference(mu1, mu2, k, terms=120)
        assert abs(skellam_pmf(SkellamParams(mu1, mu2), k) - ref) < 1e-10


class TestCoordinateLaw:
    PROFILE = SkellamFamily([0.25, 0.75, 0.5, 1.0])

    def test_params_scale_with_weight_and_window(self):
        p = coordinate_params(self.PROFILE, 2, 3.0)
        assert p.mu1 == 0.25 * 0.75 * 3.0
        assert p.mu2 == 0.25 * 0.25 * 3.0

    def test_params_coordinate_range(self):
        with pytest.raises(ValueError, match="outside"):
            coordinate_params(self.PROFILE, 0, 1.0)
        with pytest.raises(ValueError, match="outside"):
            coordinate_params(self.PROFILE, 5, 1.0)

    def test_prob_zero_short_window_limit(self):
        assert abs(prob_zero(self.PROFILE, 1, 1e-8) - 1.0) < 1e-6

    def test_prob_zero_requires_positive_window(self):
        with pytest.raises(ValueError, match="positive"):
            prob_zero(self.PROFILE, 1, 0.0)

    def test_exponent_matches_charfn_reference(self):
        rng = np.random.default_rng(20)
        for _ in range(10):
            weight = float(0.5 ** rng.integers(1, 6))
            lam = float(rng.uniform(0.0, 1.0))
            phi = float(rng.uniform(-3.0, 3.0))
            lhs = np.exp(coordinate_exponent(weight, lam, phi))
            ref = coordinate_charfn_reference(weight, lam, phi, t=1.0)
            assert abs(lhs - ref) < 1e-10


class TestFamilyExponent:
    def test_agrees_with_generic_exponent(self):
        profile = SkellamFamily([0.1, 0.9, 0.4, 0.6, 0.5])
        f = FiniteFunctional.from_pairs({1: 0.3, 3: -1.2, 5: 2.0})
        assert abs(psi_lambda(profile, f) - levy_exponent(profile, f)) < 1e-14

    def test_zero_functional(self):
        profile = SkellamFamily([0.3, 0.7])
        assert psi_lambda(profile, FiniteFunctional.zero()) == 0j

    def test_enforces_truncation(self):
        profile = SkellamFamily([0.3, 0.7])
        with pytest.raises(Exception, match="truncation"):
            psi_lambda(profile, FiniteFunctional.from_pairs({3: 1.0}))


class TestUnitInnerProduct:
    PROFILE = SkellamFamily([0.2, 0.8, 0.5])

    def test_self_is_exactly_one(self):
        f = FiniteFunctional.from_pairs({1: 0.7, 2: -0.4})
        assert unit_inner_product(self.PROFILE, f, f, 2.0) == 1.0 + 0.0j

    def test_conjugate_symmetry_is_exact(self):
        f = FiniteFunctional.from_pairs({1: 0.7, 3: 1.1})
        g = FiniteFunctional.from_pairs({2: -0.5, 3: 0.2})
        ab = unit_inner_product(self.PROFILE, f, g, 1.5)
        ba = unit_inner_product(self.PROFILE, g, f, 1.5)
        assert ab == ba.conjugate()

    def test_value_is_exponent_of_difference(self):
        f = FiniteFunctional.from_pairs({1: 0.7})
        g = FiniteFunctional.from_pairs({2: -0.5})
        got = unit_inner_product(self.PROFILE, f, g, 2.0)
        want = np.exp(2.0 * psi_lambda(self.PROFILE, f - g))
        assert got == complex(want)

    def test_requires_positive_time(self):
        f = FiniteFunctional.from_pairs({1: 0.7})
        with pytest.raises(ValueError, match="positive"):
            unit_inner_product(self.PROFILE, f, f, -1.0)


class TestDiscriminate:
    def test_equal_profiles_gap_is_exactly_zero(self):
        a = SkellamFamily([0.3, 0.6, 0.9])
        b = SkellamFamily([0.3, 0.6, 0.9])
        res = discriminate(a, b)
        assert res.max_gap == 0.0
        assert res.coordinate is None
        assert not res.distinguishable

    def test_single_coordinate_delta_gap(self):
        # bumping lambda_n by delta moves only the imaginary part, by
        # 2 * 2**-n * delta at phi = pi/2, which a multiple-of-4 grid hits
        delta = 0.25
        K = 20
        for n in range(1, K + 1):
            lams = np.full(K, 0.5)
            lams[n - 1] += delta
            res = discriminate(SkellamFamily(np.full(K, 0.5)), SkellamFamily(lams))
            expected = 2.0 ** (1 - n) * delta
            assert res.coordinate == n
            assert abs(res.max_gap - expected) / expected < 1e-12

    def test_detection_prefers_first_differing_coordinate(self):
        a = SkellamFamily([0.5, 0.5, 0.5])
        b = SkellamFamily([0.5, 0.9, 0.1])
        assert discriminate(a, b).coordinate == 2

    def test_resolution_limit_field(self):
        a = SkellamFamily(np.full(8, 0.5))
        assert discriminate(a, a).resolution_limit == 8
        big = SkellamFamily(np.full(60, 0.5))
        assert discriminate(big, big).resolution_limit == 48

    def test_rejects_mismatched_truncation(self):
        with pytest.raises(ValueError, match="truncation"):
            discriminate(SkellamFamily([0.5]), SkellamFamily([0.5, 0.5]))

    def test_rejects_tiny_grid(self):
        a = SkellamFamily([0.5])
        with pytest.raises(ValueError, match="grid_points"):
            discriminate(a, a, grid_points=3)

    def test_result_is_frozen(self):
        res = DiscriminationResult(0.0, None, 8)
        with pytest.raises(AttributeError):
            res.max_gap = 1.0
