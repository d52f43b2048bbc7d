"""Tests for geographic crossover and power-off mutation."""
import numpy as np
import pytest

from geometry.environment import Environment
from models.coverage import connect
from models.radio import OFF
from models.tables import precompute
from optimizer.individual import Individual
from optimizer.operators import crossover, mutate, split_genes


class TestSplitGenes:
    """The cut partitions the APs and swaps levels across it."""

    def test_partition(self) -> None:
        rng = np.random.default_rng(0)
        ap_x = np.array([3.0, 10.0, 25.0, 40.0, 18.0])
        a = np.array([1, 2, 3, 4, 5])
        b = np.array([9, 8, 7, 6, 0])
        for _ in range(200):
            c1, c2, left = split_genes(a, b, ap_x, rng)
            assert left.any() and not left.all()
            np.testing.assert_array_equal(c1[left], a[left])
            np.testing.assert_array_equal(c1[~left], b[~left])
            np.testing.assert_array_equal(c2[left], b[left])
            np.testing.assert_array_equal(c2[~left], a[~left])
            # left side is a prefix in x order
            assert ap_x[left].max() < ap_x[~left].min()

    def test_westmost_always_left(self) -> None:
        rng = np.random.default_rng(1)
        ap_x = np.array([5.0, 5.0, 30.0])
        for _ in range(100):
            _, _, left = split_genes(np.zeros(3), np.ones(3), ap_x, rng)
            assert left[0] and left[1] and not left[2]

    def test_shared_x_cuts_by_index(self) -> None:
        rng = np.random.default_rng(2)
        ap_x = np.full(4, 7.0)
        for _ in range(100):
            _, _, left = split_genes(np.zeros(4), np.ones(4), ap_x, rng)
            assert left.any() and not left.all()
            assert list(left) == sorted(left, reverse=True)

    def test_single_ap(self) -> None:
        c1, c2, left = split_genes(np.array([4]), np.array([9]), np.array([1.0]), np.random.default_rng(0))
        assert left.all()
        assert c1[0] == 4 and c2[0] == 9


class TestCrossover:
    def test_children_are_repaired(self, hall_tables) -> None:
        rng = np.random.default_rng(3)
        a = Individual(levels=np.array([13, 0, 0]))
        b = Individual(levels=np.array([0, 0, 13]))
        for _ in range(20):
            c1, c2 = crossover(a, b, hall_tables, 1.0, rng)
            for child in (c1, c2):
                assert not child.evaluated
                assert child.levels.shape == (3,)
                assert (child.levels >= OFF).all() and (child.levels <= 13).all()

    def test_parents_untouched(self, hall_tables) -> None:
        a = Individual(levels=np.array([5, 6, 7]))
        b = Individual(levels=np.array([1, 2, 3]))
        crossover(a, b, hall_tables, 1.0, np.random.default_rng(4))
        np.testing.assert_array_equal(a.levels, [5, 6, 7])
        np.testing.assert_array_equal(b.levels, [1, 2, 3])


@pytest.fixture
def four_ap_tables(radio):
    env = Environment(x_min=0, y_min=0, x_max=40, y_max=20, gs=1,
                      ap_positions=[(10, 5), (10, 15), (30, 5), (30, 15)])
    return precompute(env, radio)


class TestMutate:
    """One AP at the highest level present goes off."""

    def test_unique_maximum(self, four_ap_tables) -> None:
        child = Individual(levels=np.array([2, 13, 3, 0]))
        out = mutate(child, four_ap_tables, 0.01, np.random.default_rng(0))
        np.testing.assert_array_equal(out.levels, [2, 0, 3, 0])

    def test_tied_maximum(self, four_ap_tables) -> None:
        seen = set()
        rng = np.random.default_rng(1)
        for _ in range(40):
            out = mutate(Individual(levels=np.array([3, 5, 5, 0])), four_ap_tables, 0.01, rng)
            off = tuple(np.flatnonzero(out.levels == 0))
            assert off in {(1, 3), (2, 3)}
            seen.add(off)
        assert seen == {(1, 3), (2, 3)}

    def test_all_off_is_a_no_op(self, four_ap_tables) -> None:
        child = Individual(levels=np.zeros(4, dtype=np.int64))
        assert mutate(child, four_ap_tables, 1.0, np.random.default_rng(2)) is child

    def test_repair_restores_coverage(self, four_ap_tables) -> None:
        """Switching off the only AP forces the repair to power something on."""
        out = mutate(Individual(levels=np.array([0, 13, 0, 0])), four_ap_tables, 1.0, np.random.default_rng(3))
        assert (out.levels > 0).any()
        state = connect(out.levels, four_ap_tables)
        assert state.covered_count == state.eligible_count
