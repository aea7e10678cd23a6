"""Unit tests for the starting classes of the small-class experiments."""

from math import comb

import pytest

from uniwilf.errors import DomainError
from uniwilf.experiments import orbit_report, run_experiment, starting_classes
from uniwilf.perms import parse_permutation_list
from uniwilf.search import SearchStatus
from uniwilf.wilf import is_uniquely_wilf


class TestStartingClasses:
    """Orbit representatives of level-3 choices containing both monotones."""

    @pytest.mark.parametrize(
        "size, orbit_sizes",
        [(2, [1]), (3, [4]), (4, [2, 4]), (5, [4]), (6, [1])],
    )
    def test_orbit_sizes(self, size, orbit_sizes):
        """Representatives and orbit sizes for every |F_3|."""
        starts = starting_classes(size)
        assert sorted(s.orbit_size for s in starts) == orbit_sizes
        assert sum(s.orbit_size for s in starts) == comb(4, size - 2)

    def test_wedge_representative(self):
        """{123,132,231,321} is one of the |F_3| = 4 representatives."""
        reps = {s.level3 for s in starting_classes(4)}
        assert frozenset(parse_permutation_list("123,132,231,321")) in reps

    def test_classes_are_uniquely_wilf(self):
        """Every starting class is balanced at size 3."""
        for size in range(2, 7):
            for start in starting_classes(size):
                assert is_uniquely_wilf(start.as_class(), 3)

    def test_out_of_range(self):
        """Level 3 holds between 2 and 6 permutations."""
        with pytest.raises(DomainError):
            starting_classes(7)

    def test_orbit_report(self):
        """The report lists one representative per orbit."""
        report = orbit_report(starting_classes(4))
        assert report.group_size == 8
        assert report.representatives == [["123", "132", "213", "321"], ["123", "132", "231", "321"]]
        assert report.orbit_sizes == [2, 4]


class TestRunExperiment:
    """Searches from the starting classes."""

    def test_monotones_survive(self):
        """Starting from the two monotones alone the full chain survives."""
        rows = run_experiment(2, 6)
        assert len(rows) == 1
        assert rows[0].resolution.status is SearchStatus.UNIQUE_FULL
        assert rows[0].status == "unique-full"
