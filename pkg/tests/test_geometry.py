"""Tests for the environment grid, obstacles and line-of-sight blockage."""
import numpy as np
import pytest

from geometry.environment import Environment, GridPoint, Obstacle, build_grid, grid_arrays, lex_less
from geometry.obstacles import los_blocked, obstacle_loss, obstacle_loss_column, segment_hits_box
from utils.errors import ConfigError

# =============================================================================
# Grid enumeration
# =============================================================================


class TestGrid:
    """Grid size, numbering and eligibility."""

    def test_small_hall_grid_size(self) -> None:
        """102 m x 24 m at gs = 1 gives 102 * 24 grid points."""
        env = Environment(x_min=0, y_min=0, x_max=102, y_max=24, gs=1)
        assert env.size == 2448
        assert len(build_grid(env)) == 2448

    def test_partial_cells_are_counted(self) -> None:
        """A trailing partial cell still gets its own grid point."""
        env = Environment(x_min=0, y_min=0, x_max=10.5, y_max=4, gs=1)
        assert (env.nx, env.ny) == (11, 4)
        assert env.size == 44

    def test_lexicographic_numbering(self) -> None:
        """Index 1 is (xMin, yMin); a column of constant x is listed before the next x."""
        env = Environment(x_min=0, y_min=0, x_max=102, y_max=24, gs=1)
        grid = build_grid(env)
        assert (grid[0].index, grid[0].x, grid[0].y) == (1, 0.0, 0.0)
        assert (grid[1].x, grid[1].y) == (0.0, 1.0)
        assert (grid[24].index, grid[24].x, grid[24].y) == (25, 1.0, 0.0)
        for a, b in zip(grid, grid[1:]):
            assert lex_less((a.x, a.y), (b.x, b.y))

    def test_lex_less(self) -> None:
        assert lex_less((0, 5), (1, 0))
        assert lex_less((1, 0), (1, 1))
        assert not lex_less((1, 1), (1, 1))
        assert not lex_less((2, 0), (1, 9))

    def test_offset_origin(self) -> None:
        env = Environment(x_min=-5, y_min=2, x_max=0, y_max=4, gs=0.5)
        g = grid_arrays(env)
        assert g.size == 10 * 4
        assert (g.xs[0], g.ys[0]) == (-5.0, 2.0)
        assert g.ys[1] == pytest.approx(2.5)

    def test_rack_and_ap_points_are_ineligible(self) -> None:
        """GPs inside or on the edge of a footprint, and GPs under an AP, take no receiver."""
        rack = Obstacle(k=1, x=2, y=2, length=3, width=1, height=9, loss_db=7.37)
        env = Environment(x_min=0, y_min=0, x_max=10, y_max=6, gs=1, obstacles=[rack], ap_positions=[(8, 4)])
        by_xy = {(p.x, p.y): p for p in build_grid(env)}
        assert by_xy[(2.0, 2.0)].occupied_by_obstacle
        assert by_xy[(5.0, 3.0)].occupied_by_obstacle
        assert not by_xy[(6.0, 3.0)].occupied_by_obstacle
        assert by_xy[(8.0, 4.0)].occupied_by_ap
        assert not by_xy[(8.0, 4.0)].eligible
        assert by_xy[(0.0, 0.0)].eligible
        assert sum(p.eligible for p in by_xy.values()) == env.size - 8 - 1

    def test_points_in_square(self) -> None:
        env = Environment(x_min=0, y_min=0, x_max=10, y_max=10, gs=1)
        g = grid_arrays(env)
        pos = g.points_in_square(5.0, 5.0, 1.0)
        assert len(pos) == 9
        assert np.all(np.abs(g.xs[pos] - 5) <= 1) and np.all(np.abs(g.ys[pos] - 5) <= 1)
        assert list(pos) == sorted(pos)
        assert len(g.points_in_square(0.0, 0.0, 1.5)) == 4
        assert len(g.points_in_square(50.0, 50.0, 1.0)) == 0


class TestEnvironmentValidation:
    """Invalid environments are rejected with the offending field."""

    def test_zero_grid_size(self) -> None:
        with pytest.raises(ConfigError) as exc:
            Environment(x_min=0, y_min=0, x_max=10, y_max=10, gs=0)
        assert exc.value.field == "environment.gs"

    def test_empty_extent(self) -> None:
        with pytest.raises(ConfigError):
            Environment(x_min=5, y_min=0, x_max=5, y_max=10, gs=1)

    def test_obstacle_outside(self) -> None:
        rack = Obstacle(k=1, x=8, y=0, length=20, width=3, height=9, loss_db=7.37)
        with pytest.raises(ConfigError):
            Environment(x_min=0, y_min=0, x_max=10, y_max=10, gs=1, obstacles=[rack])

    def test_ap_outside(self) -> None:
        with pytest.raises(ConfigError):
            Environment(x_min=0, y_min=0, x_max=10, y_max=10, gs=1, ap_positions=[(11, 0)])

    def test_bad_obstacle(self) -> None:
        with pytest.raises(ConfigError):
            Obstacle(k=1, x=0, y=0, length=0, width=3, height=9, loss_db=7.37)
        with pytest.raises(ConfigError):
            Obstacle(k=1, x=0, y=0, length=1, width=3, height=9, loss_db=7.37, orientation="diagonal")

    def test_vertical_footprint_swaps_axes(self) -> None:
        rack = Obstacle(k=1, x=1, y=2, length=20, width=3, height=9, loss_db=7.37, orientation="vertical")
        assert rack.footprint == (1, 2, 4, 22)


# =============================================================================
# Line of sight and obstacle loss
# =============================================================================


@pytest.fixture
def corridor() -> Environment:
    """AP at (5, 5); two tall racks across the y = 5 line at x = 18 and x = 25."""
    racks = [Obstacle(k=1, x=18, y=4, length=3, width=2, height=9, loss_db=7.37),
             Obstacle(k=2, x=25, y=4, length=3, width=2, height=9, loss_db=7.37)]
    return Environment(x_min=0, y_min=0, x_max=40, y_max=10, gs=1, obstacles=racks, ap_positions=[(5, 5)])


class TestLineOfSight:
    """beta and OL for simple layouts."""

    def test_one_rack_in_the_way(self, corridor) -> None:
        gp = GridPoint(index=0, x=22, y=5)
        assert los_blocked(gp, corridor.rx_height, 0, corridor, corridor.obstacles[0])
        assert not los_blocked(gp, corridor.rx_height, 0, corridor, corridor.obstacles[1])
        assert obstacle_loss(gp, 0, corridor) == pytest.approx(7.37)

    def test_two_racks_in_the_way(self, corridor) -> None:
        gp = GridPoint(index=0, x=35, y=5)
        assert obstacle_loss(gp, 0, corridor) == pytest.approx(14.74)

    def test_clear_path(self, corridor) -> None:
        gp = GridPoint(index=0, x=5, y=9)
        assert obstacle_loss(gp, 0, corridor) == 0.0

    def test_low_obstacle_does_not_block(self) -> None:
        """A box below both antenna heights never touches the segment."""
        low = Obstacle(k=1, x=8, y=4, length=2, width=2, height=1.0, loss_db=7.37)
        env = Environment(x_min=0, y_min=0, x_max=20, y_max=10, gs=1, obstacles=[low], ap_positions=[(2, 5)])
        assert obstacle_loss(GridPoint(index=0, x=15, y=5), 0, env) == 0.0

    def test_touching_an_edge_counts(self) -> None:
        """Boundaries are inclusive: a segment grazing a face is blocked."""
        assert segment_hits_box((0, 4, 2), (10, 4, 1.4), (3, 4, 0), (5, 6, 9))
        assert not segment_hits_box((0, 3.9, 2), (10, 3.9, 1.4), (3, 4, 0), (5, 6, 9))

    def test_endpoint_symmetry(self) -> None:
        """Swapping the segment's endpoints never changes the verdict."""
        rng = np.random.default_rng(3)
        for _ in range(500):
            p0 = tuple(rng.uniform(0, 10, 3))
            p1 = tuple(rng.uniform(0, 10, 3))
            lo = tuple(rng.uniform(0, 6, 3))
            hi = tuple(np.asarray(lo) + rng.uniform(0.1, 4, 3))
            assert segment_hits_box(p0, p1, lo, hi) == segment_hits_box(p1, p0, lo, hi)

    def test_column_matches_scalar(self, random_env) -> None:
        """The vectorised loss column agrees with the per-pair computation."""
        for seed in range(10):
            env = random_env(seed)
            g = grid_arrays(env)
            for ap in range(env.ap_count):
                col = obstacle_loss_column(env, ap, g.xs, g.ys)
                for i in range(0, g.size, 7):
                    gp = GridPoint(index=i + 1, x=float(g.xs[i]), y=float(g.ys[i]))
                    assert col[i] == obstacle_loss(gp, ap, env)
