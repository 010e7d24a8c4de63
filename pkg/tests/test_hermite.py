"""Hermite recurrence, generating series, and probe reconstruction."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levyps.functionals import FiniteFunctional
from levyps.hermite import (
    MAX_DEGREE,
    build_hermite_system,
    covariance_matrix,
    generating_exponential,
    generating_series,
    hermite,
    hermite_product,
    multi_indices,
    reconstruct_hermite,
    whitener,
)
from levyps.models import GaussianDiagonal
from oracles import generating_tail_bound, hermite_reference


class TestHermite:
    def test_low_degrees_by_hand(self):
        y = 1.7
        assert hermite(0, y) == 1.0
        assert hermite(1, y) == y
        assert hermite(2, y) == pytest.approx(y * y - 1.0, rel=1e-15)
        assert hermite(3, y) == pytest.approx(y**3 - 3 * y, rel=1e-14)

    def test_against_scipy_up_to_max_degree(self):
        ys = np.linspace(-3.0, 3.0, 13)
        for k in range(MAX_DEGREE + 1):
            ref = hermite_reference(k, ys)
            got = hermite(k, ys)
            scale = np.maximum(1.0, np.abs(ref))
            assert np.all(np.abs(got - ref) / scale < 1e-10)

    def test_scalar_input_gives_float(self):
        assert isinstance(hermite(4, 0.3), float)

    def test_rejects_degree_out_of_range(self):
        with pytest.raises(ValueError, match="degree"):
            hermite(MAX_DEGREE + 1, 0.0)
        with pytest.raises(ValueError, match="degree"):
            hermite(-1, 0.0)

    @given(st.integers(0, 12), st.floats(-4.0, 4.0))
    @settings(max_examples=200, deadline=None)
    def test_recurrence_matches_scipy_property(self, k, y):
        ref = float(hermite_reference(k, y))
        assert abs(hermite(k, y) - ref) <= 1e-10 * max(1.0, abs(ref))


class TestMultiIndices:
    def test_count_is_binomial(self):
        for n in (1, 2, 3):
            for d in (0, 1, 2, 4):
                assert len(multi_indices(n, d)) == math.comb(n + d, n)

    def test_graded_order(self):
        idx = multi_indices(2, 2)
        totals = [sum(a) for a in idx]
        assert totals == sorted(totals)
        assert idx[0] == (0, 0)

    def test_entries_are_complete(self):
        idx = set(multi_indices(2, 2))
        assert idx == {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), }

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            multi_indices(0, 2)
        with pytest.raises(ValueError):
            multi_indices(2, -1)


class TestGeneratingIdentity:
    def test_product_structure(self):
        assert hermite_product((2, 1), (1.5, -0.5)) == pytest.approx(
            hermite(2, 1.5) * hermite(1, -0.5), rel=1e-15
        )
        with pytest.raises(ValueError, match="dimension"):
            hermite_product((1,), (0.0, 0.0))

    def test_series_converges_to_exponential(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            n = int(rng.integers(1, 4))
            z = rng.uniform(-1.0, 1.0, n)
            z *= rng.uniform(0.1, 0.5) / max(np.linalg.norm(z), 1e-12)
            y = rng.uniform(-2.5, 2.5, n)
            lhs = generating_exponential(z, y)
            rhs = generating_series(z, y, 12)
            assert abs(lhs - rhs) < 1e-6

    @given(
        st.integers(1, 3),
        st.floats(0.05, 0.5),
        st.floats(-2.0, 2.0),
        st.integers(0, 2**32 - 1),
    )
    @settings(max_examples=60, deadline=None)
    def test_truncation_error_within_analytic_tail_bound(self, n, znorm, ybase, salt):
        rng = np.random.default_rng(salt)
        z = rng.uniform(-1.0, 1.0, n)
        z *= znorm / max(np.linalg.norm(z), 1e-12)
        y = np.full(n, ybase)
        degree = 8
        err = abs(generating_exponential(z, y) - generating_series(z, y, degree))
        assert err <= generating_tail_bound(z, y, degree) + 1e-15


class TestReconstruction:
    @pytest.mark.parametrize("n,degree", [(1, 3), (2, 2), (2, 3), (3, 2)])
    def test_recovers_hermite_values(self, n, degree):
        system = build_hermite_system(n, degree)
        rng = np.random.default_rng(41)
        for _ in range(5):
            y = rng.uniform(-2.0, 2.0, n)
            got = reconstruct_hermite(system, y)
            want = np.array([hermite_product(a, y) for a in system.indices])
            scale = np.maximum(1.0, np.abs(want))
            assert np.all(np.abs(got - want) / scale < 1e-8 * system.cond)

    def test_explicit_probe_set(self):
        probes = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, 0.0), (0.0, 2.0), (2.0, 1.0)]
        system = build_hermite_system(2, 2, probes=probes)
        assert system.size == 6
        assert np.isfinite(system.cond)
        y = (0.7, -1.1)
        got = reconstruct_hermite(system, y)
        want = np.array([hermite_product(a, y) for a in system.indices])
        assert np.max(np.abs(got - want)) < 1e-8 * system.cond

    def test_singular_probes_fail_immediately(self):
        # two identical probes make the matrix rank deficient
        probes = [(1.0,), (1.0,)]
        with pytest.raises(np.linalg.LinAlgError, match="singular"):
            build_hermite_system(1, 1, probes=probes)

    def test_wrong_probe_shape(self):
        with pytest.raises(ValueError, match="probes"):
            build_hermite_system(1, 2, probes=[(1.0,), (2.0,)])

    def test_degree_cap(self):
        with pytest.raises(ValueError, match="degree"):
            build_hermite_system(1, MAX_DEGREE + 1)


class TestWhitening:
    def test_pairing_preserved(self):
        sigma = np.array([[2.0, 0.3], [0.3, 1.0]])
        w = whitener(sigma, 2.5)
        rng = np.random.default_rng(51)
        z = rng.uniform(-1, 1, 2)
        y = rng.uniform(-1, 1, 2)
        assert w.dual(z) @ w.state(y) == pytest.approx(z @ y, rel=1e-12, abs=1e-12)

    def test_roots_invert_each_other(self):
        sigma = np.diag([4.0, 0.25])
        w = whitener(sigma, 1.0)
        assert np.allclose(w.root @ w.inv_root, np.eye(2), atol=1e-12)
        assert np.allclose(w.root @ w.root, sigma, atol=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError, match="positive"):
            whitener(np.eye(2), 0.0)
        with pytest.raises(ValueError, match="square"):
            whitener(np.ones((2, 3)), 1.0)
        with pytest.raises(ValueError, match="symmetric"):
            whitener(np.array([[1.0, 0.5], [0.0, 1.0]]), 1.0)
        with pytest.raises(ValueError, match="definite"):
            whitener(np.diag([1.0, -1.0]), 1.0)


class TestCovarianceMatrix:
    def test_diagonal_pairing(self):
        model = GaussianDiagonal(drift=[0.0, 0.0], q=[2.0, 0.5])
        f = FiniteFunctional.from_pairs({1: 1.0})
        g = FiniteFunctional.from_pairs({1: 1.0, 2: 2.0})
        sigma = covariance_matrix(model, [f, g])
        assert sigma.shape == (2, 2)
        assert sigma[0, 0] == 2.0
        assert sigma[0, 1] == 2.0
        assert sigma[1, 1] == 2.0 + 0.5 * 4.0
        assert sigma[1, 0] == sigma[0, 1]
