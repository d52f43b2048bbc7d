"""Tests for the link providers: lookup tables against on-the-fly recomputation."""
import numpy as np
import pytest

from geometry.environment import Environment
from models.coverage import connect, evaluate
from models.radio import RadioModel, d_max, full_power
from models.tables import LinkProvider, LookupTables, OnTheFlyLinks, gp_candidates, precompute, table_bytes
from optimizer.repair import coverage_mask
from utils.errors import ConfigError, ResourceError


class TestLookupTables:
    """Shapes, contents and the memory cap."""

    def test_base_provider_is_abstract(self, tiny_env, radio) -> None:
        base = LinkProvider(tiny_env, radio)
        for call in (base.loss_matrix, lambda: base.loss_at(0, 0), lambda: base.d_max(1),
                     lambda: base.candidates(0, 1)):
            with pytest.raises(NotImplementedError):
                call()

    def test_shapes(self, hall_tables, hall_env, radio) -> None:
        assert hall_tables.path_loss_table.shape == (hall_env.size, hall_env.ap_count)
        assert hall_tables.obstacle_loss_table.shape == (hall_env.size, hall_env.ap_count)
        assert hall_tables.d_max_by_level.shape == (radio.n_levels + 1,)

    def test_d_max_vector(self, hall_tables, radio) -> None:
        for level in range(radio.n_levels + 1):
            assert hall_tables.d_max(level) == d_max(level, radio)

    def test_rack_shows_in_obstacle_loss(self, hall_tables) -> None:
        assert set(np.unique(hall_tables.obstacle_loss_table)) <= {0.0, 7.37}
        assert (hall_tables.obstacle_loss_table > 0).any()

    def test_memory_cap(self, hall_env, radio) -> None:
        with pytest.raises(ResourceError) as exc:
            precompute(hall_env, radio, memory_cap=1024)
        assert exc.value.required_bytes == table_bytes(hall_env)
        assert table_bytes(hall_env) == 2 * hall_env.size * 3 * 8

    def test_heights_must_agree(self, tiny_env) -> None:
        with pytest.raises(ConfigError):
            LookupTables(tiny_env, RadioModel(ap_height=3.0))

    def test_candidates_need_power(self, tiny_tables) -> None:
        with pytest.raises(ValueError):
            gp_candidates(0, 0, tiny_tables)


class TestSquarePrefilter:
    """Every GP an AP covers at some level lies inside its square at that level."""

    def test_no_covered_gp_is_missed(self, random_env, radio) -> None:
        for seed in range(20):
            tables = precompute(random_env(seed), radio)
            eirp = radio.eirp_table()
            for ap in range(tables.env.ap_count):
                for level in (1, 4, radio.n_levels):
                    covered = np.flatnonzero(tables.grid.eligible
                                             & (eirp[level] - tables.path_loss_table[:, ap] >= radio.thld))
                    assert set(covered) <= set(tables.candidates(ap, level))

    def test_square_is_small_at_low_power(self, radio) -> None:
        env = Environment(x_min=0, y_min=0, x_max=100, y_max=100, gs=1, ap_positions=[(50, 50)])
        tables = precompute(env, radio)
        assert len(tables.candidates(0, 1)) < 20 * 20
        assert len(tables.candidates(0, 1)) < env.size / 10


class TestFastEqualsNaive:
    """Table-backed answers are bit-identical to recomputation."""

    def test_loss_matrix(self, random_env, both_links) -> None:
        for seed in range(20):
            fast, naive = both_links(random_env(seed))
            np.testing.assert_array_equal(fast.loss_matrix(), naive.loss_matrix())

    def test_connection_and_objective(self, random_env, both_links, radio) -> None:
        """100 random (scenario, power vector) pairs."""
        rng = np.random.default_rng(11)
        for seed in range(20):
            fast, naive = both_links(random_env(100 + seed))
            assert fast.reference_interference_mw == naive.reference_interference_mw
            for _ in range(5):
                levels = rng.integers(0, radio.n_levels + 1, size=fast.env.ap_count)
                a, b = connect(levels, fast), connect(levels, naive)
                np.testing.assert_array_equal(a.best_rx_dbm, b.best_rx_dbm)
                np.testing.assert_array_equal(a.connected_ap, b.connected_ap)
                np.testing.assert_array_equal(a.covered, b.covered)
                np.testing.assert_array_equal(a.interference_mw, b.interference_mw)
                assert evaluate(levels, fast, 0.9) == evaluate(levels, naive, 0.9)
                np.testing.assert_array_equal(coverage_mask(levels, fast), coverage_mask(levels, naive))

    def test_naive_scans_everything(self, tiny_env, radio) -> None:
        naive = OnTheFlyLinks(tiny_env, radio)
        assert naive.naive
        assert len(naive.candidates(0, 1)) == int(naive.grid.eligible.sum())

    def test_reference_is_full_power(self, hall_tables, hall_env, radio) -> None:
        state = connect(full_power(hall_env.ap_count, radio), hall_tables)
        assert hall_tables.reference_interference_mw == state.total_interference_mw
