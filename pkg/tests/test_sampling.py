"""Path ensembles: determinism, laws, shifts, serialization."""

import numpy as np
import pytest

import oracles
from levyps.errors import CapacityError
from levyps.functionals import FiniteFunctional
from levyps.models import (
    BernoulliCompound,
    GaussianDiagonal,
    LpCompoundPoisson,
    SkellamFamily,
    drift_vector,
    variance_vector,
)
from levyps.sampling import (
    TimeGrid,
    empirical_charfn,
    read_binary,
    read_csv,
    sample_paths,
    shifted_view,
    write_binary,
    write_csv,
)

GRID = TimeGrid((0.5, 1.0))

ALL_MODELS = [
    GaussianDiagonal(np.array([0.2, -0.1, 0.0]), np.array([1.0, 0.5, 0.25])),
    LpCompoundPoisson(np.array([1.0, 0.6, 0.3])),
    BernoulliCompound(1.5, np.array([0.3, 0.5, 0.7])),
    SkellamFamily(np.array([0.25, 0.75, 0.5])),
]


class TestTimeGrid:
    def test_rejects_non_increasing(self):
        with pytest.raises(ValueError, match="increasing"):
            TimeGrid((1.0, 0.5))

    def test_rejects_nonpositive_start(self):
        with pytest.raises(ValueError, match="positive"):
            TimeGrid((0.0, 1.0))

    def test_deltas(self):
        grid = TimeGrid((0.5, 1.0, 2.5))
        assert np.allclose(grid.deltas, [0.5, 0.5, 1.5])

    def test_index_of_unknown_time(self):
        with pytest.raises(ValueError, match="grid"):
            GRID.index_of(0.75)


class TestDeterminism:
    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: type(m).__name__)
    def test_same_seed_same_bits(self, model):
        a = sample_paths(model, GRID, 500, 42)
        b = sample_paths(model, GRID, 500, 42)
        assert np.array_equal(a.increments, b.increments)
        assert np.array_equal(a.jump_counts, b.jump_counts)

    def test_different_seeds_differ(self):
        a = sample_paths(ALL_MODELS[0], GRID, 500, 1)
        b = sample_paths(ALL_MODELS[0], GRID, 500, 2)
        assert not np.array_equal(a.increments, b.increments)

    def test_block_layout_does_not_leak_into_values(self):
        # a block boundary at 4096 must not create a seam in the law:
        # the same (interval, block) keying yields the identical prefix
        # when M grows past one block
        small = sample_paths(ALL_MODELS[0], GRID, 100, 7)
        large = sample_paths(ALL_MODELS[0], GRID, 5000, 7)
        assert np.array_equal(large.increments[:100], small.increments)

    def test_arrays_are_read_only(self):
        ens = sample_paths(ALL_MODELS[0], GRID, 10, 1)
        with pytest.raises(ValueError):
            ens.increments[0, 0, 0] = 1.0


class TestLaws:
    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: type(m).__name__)
    def test_increment_moments(self, model):
        M = 60000
        ens = sample_paths(model, GRID, M, 3)
        for i, dt in enumerate(GRID.deltas):
            inc = ens.increments[:, i, :]
            mean_expected = dt * drift_vector(model)
            var_expected = dt * variance_vector(model)
            for n in range(model.K):
                x = inc[:, n]
                se = x.std(ddof=1) / np.sqrt(M)
                assert abs(x.mean() - mean_expected[n]) < 6 * se
                c = x - x.mean()
                se_var = np.sqrt(max((c**4).mean() - (c**2).mean() ** 2, 1e-30) / M)
                assert abs((c**2).mean() - var_expected[n]) < 6 * se_var

    def test_stationarity_two_sample_ks(self):
        # both intervals of the default grid span 0.5 time units, so the
        # increments must share a law
        grid = TimeGrid((0.5, 1.0))
        for model in (ALL_MODELS[0], ALL_MODELS[3]):
            ens = sample_paths(model, grid, 20000, 11)
            a = np.sort(ens.increments[:, 0, 0])
            b = np.sort(ens.increments[:, 1, 0])
            pooled = np.concatenate([a, b])
            cdf_a = np.searchsorted(a, pooled, side="right") / a.size
            cdf_b = np.searchsorted(b, pooled, side="right") / b.size
            d = np.max(np.abs(cdf_a - cdf_b))
            assert d < oracles.ks_two_sample_critical(a.size, b.size)

    def test_interval_independence(self):
        ens = sample_paths(ALL_MODELS[0], GRID, 50000, 5)
        x = ens.increments[:, 0, 0]
        y = ens.increments[:, 1, 0]
        corr = np.corrcoef(x, y)[0, 1]
        assert abs(corr) < 5.0 / np.sqrt(ens.M)

    def test_gaussian_marginal_ks(self):
        model = GaussianDiagonal(np.array([0.0]), np.array([2.0]))
        ens = sample_paths(model, TimeGrid((1.0,)), 100000, 9)
        z = ens.increments[:, 0, 0] / np.sqrt(2.0)
        grid = np.sort(z)
        emp = np.arange(1, grid.size + 1) / grid.size
        d = np.max(np.abs(emp - oracles.normal_cdf(grid)))
        assert d < 1.95 / np.sqrt(grid.size)  # alpha ~ 0.001 one-sample

    def test_levels_accumulate(self):
        ens = sample_paths(ALL_MODELS[1], GRID, 100, 1)
        total = ens.increments.sum(axis=1)
        assert np.allclose(ens.levels_at(1.0), total, atol=0, rtol=0)


class TestShiftedView:
    def test_shift_rebases_times(self):
        ens = sample_paths(ALL_MODELS[0], TimeGrid((0.5, 1.0, 1.5)), 50, 1)
        view = shifted_view(ens, 0.5)
        assert view.grid.times == (0.5, 1.0)
        assert np.array_equal(view.increments, ens.increments[:, 1:, :])

    def test_shift_shares_memory(self):
        ens = sample_paths(ALL_MODELS[0], TimeGrid((0.5, 1.0)), 50, 1)
        view = shifted_view(ens, 0.5)
        assert view.increments.base is not None

    def test_zero_shift_is_identity(self):
        ens = sample_paths(ALL_MODELS[0], GRID, 50, 1)
        assert shifted_view(ens, 0.0) is ens

    def test_shift_past_end_raises(self):
        ens = sample_paths(ALL_MODELS[0], GRID, 50, 1)
        with pytest.raises(ValueError, match="grid"):
            shifted_view(ens, 1.0)


class TestEmpiricalCharfn:
    def test_zero_functional_is_exactly_one(self):
        ens = sample_paths(ALL_MODELS[3], GRID, 1000, 1)
        est, se = empirical_charfn(ens, FiniteFunctional.zero(), 1.0)
        assert est == 1.0 + 0.0j
        assert se == 0.0

    def test_stderr_scales_with_samples(self):
        phi = FiniteFunctional.from_pairs({1: 1.0})
        small = sample_paths(ALL_MODELS[0], GRID, 1000, 1)
        big = sample_paths(ALL_MODELS[0], GRID, 16000, 1)
        _, se_small = empirical_charfn(small, phi, 1.0)
        _, se_big = empirical_charfn(big, phi, 1.0)
        assert se_big < se_small


class TestCapacity:
    def test_too_many_elements_rejected(self):
        with pytest.raises(CapacityError, match="elements"):
            sample_paths(ALL_MODELS[0], GRID, 2**26, 1)


class TestSerialization:
    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: type(m).__name__)
    def test_csv_round_trip(self, model, tmp_path):
        ens = sample_paths(model, GRID, 40, 13)
        path = tmp_path / "ens.csv"
        write_csv(ens, path)
        back = read_csv(path)
        assert np.array_equal(back.increments, ens.increments)
        assert np.array_equal(back.jump_counts, ens.jump_counts)
        assert back.grid.times == ens.grid.times
        assert back.seed == ens.seed
        assert type(back.model) is type(ens.model)

    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: type(m).__name__)
    def test_binary_round_trip(self, model, tmp_path):
        ens = sample_paths(model, GRID, 40, 13)
        path = tmp_path / "ens.bin"
        write_binary(ens, path)
        back = read_binary(path)
        assert np.array_equal(back.increments, ens.increments)
        assert np.array_equal(back.jump_counts, ens.jump_counts)

    def test_binary_rejects_wrong_magic(self, tmp_path):
        path = tmp_path / "junk.bin"
        path.write_bytes(b"NOTMAGIC" + b"\x00" * 64)
        with pytest.raises(ValueError, match="magic"):
            read_binary(path)
