"""Unit tests for finite classes: enumeration, bases and closures."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uniwilf.classes import (
    FiniteClass,
    basis_of,
    downward_closure,
    enumerate_av,
    finiteness_bound,
    full_class,
    is_downward_closed,
    load_class,
    save_class,
    upward_closure,
)
from uniwilf.errors import DomainError, StructuralError
from uniwilf.perms import Permutation, parse_permutation, parse_permutation_list, permutations_of_size

P = parse_permutation


def av(basis: str, n: int) -> FiniteClass:
    return enumerate_av(parse_permutation_list(basis), n)


class TestEnumerate:
    """Tests for enumerate_av."""

    def test_pairs_class_has_n_members(self):
        """|Av(213,231,312)_n| = n."""
        assert av("213,231,312", 6).counts() == [1, 2, 3, 4, 5, 6]

    def test_wedges_double(self):
        """|Av(213,312)_n| = 2^(n-1)."""
        assert av("213,312", 7).counts() == [1, 2, 4, 8, 16, 32, 64]

    def test_catalan(self):
        """Av(132) is counted by the Catalan numbers."""
        assert av("132", 6).counts() == [1, 2, 5, 14, 42, 132]

    def test_full_class(self):
        """S_{<=4} has n! members per level."""
        assert full_class(4).counts() == [1, 2, 6, 24]

    def test_erdos_szekeres(self):
        """Av(123, 321) is empty from size 5 on."""
        assert av("123,321", 6).counts() == [1, 2, 4, 4, 0, 0]

    def test_basis_of_size_one(self):
        """Forbidding 1 leaves nothing."""
        assert av("1", 3).is_empty()

    def test_rejects_zero_horizon(self):
        """The horizon must be at least 1."""
        with pytest.raises(DomainError):
            av("12", 0)


class TestBasis:
    """Tests for basis extraction."""

    def test_recovers_single_pattern(self):
        """Av(132) up to 6 has basis {132}."""
        assert basis_of(av("132", 6)).patterns == {P("132")}

    def test_recovers_three_patterns(self):
        """Av(213,231,312) recovers its basis."""
        assert basis_of(av("213,231,312", 5)).patterns == set(parse_permutation_list("213,231,312"))

    def test_full_class_has_empty_basis(self):
        """Nothing is forbidden in S_{<=4}."""
        assert len(basis_of(full_class(4))) == 0

    def test_empty_class(self):
        """A class with no points has basis {1}."""
        assert basis_of(FiniteClass.empty(3)).patterns == {P("1")}


class TestClosures:
    """Tests for downward and upward closures."""

    def test_downward_closure_of_2431(self):
        """The patterns of 2431 level by level."""
        cls = downward_closure([P("2431")])
        assert cls.counts() == [1, 2, 3, 1]
        assert cls.level(3) == {P("132"), P("231"), P("321")}

    def test_is_downward_closed(self):
        """A set missing a deletion is not closed."""
        assert is_downward_closed(parse_permutation_list("1,12,21,132"))
        assert not is_downward_closed(parse_permutation_list("1,12,132"))

    def test_from_levels_checks_closure(self):
        """132 without 21 is rejected."""
        with pytest.raises(StructuralError):
            FiniteClass.from_levels({1: [P("1")], 2: [P("12")], 3: [P("132")]})

    def test_upward_closure_of_s2(self, s2):
        """Nothing is forbidden by S_{<=2}, so the closure is S_{<=4}."""
        assert upward_closure(s2, 4).counts() == [1, 2, 6, 24]

    def test_upward_closure_matches_basis(self):
        """Truncating Av(B) and closing up gives Av(B) back."""
        small = av("213,231,312", 3)
        assert upward_closure(small, 6).levels == av("213,231,312", 6).levels

    def test_upward_closure_below_horizon(self, s3):
        """The closure cannot be taken below the stored horizon."""
        with pytest.raises(DomainError):
            upward_closure(s3, 2)


class TestFiniteClass:
    """Tests for class helpers and files."""

    def test_truncate_and_with_level(self, s3):
        """Truncating then re-adding a level restores the class."""
        assert s3.truncate(2).with_level(s3.level(3)).levels == s3.levels

    def test_membership(self, s2):
        """Membership looks at the right level."""
        assert P("21") in s2
        assert P("123") not in s2
        assert len(s2) == 3

    def test_misplaced_level(self):
        """A size-2 permutation on level 3 is a domain error."""
        with pytest.raises(DomainError):
            FiniteClass({3: frozenset({P("12")})}, 3)

    def test_finiteness_bound(self):
        """Classes without both size-3 monotones stop by size 4."""
        assert finiteness_bound(av("123,321", 5), 3) == 4
        assert finiteness_bound(full_class(3), 3) is None
        with pytest.raises(DomainError):
            finiteness_bound(full_class(3), 1)

    def test_class_file_round_trip(self, tmp_path):
        """A saved class loads back unchanged."""
        cls = av("132", 5)
        path = tmp_path / "av132.json"
        save_class(cls, path)
        loaded = load_class(path)
        assert loaded.max_size == 5
        assert loaded.levels == cls.levels

    def test_class_file_must_be_closed(self, tmp_path):
        """Loading a non-closed class file fails structurally."""
        path = tmp_path / "bad.json"
        path.write_text('{"max_size": 3, "levels": {"1": ["1"], "2": ["12"], "3": ["132"]}}', encoding="utf-8")
        with pytest.raises(StructuralError):
            load_class(path)


SIZE_FOUR = list(permutations_of_size(4))
generators = st.lists(st.sampled_from(SIZE_FOUR), min_size=1, max_size=6)


class TestClassInvariants:
    """Properties every enumerated or closed class satisfies."""

    @pytest.mark.parametrize("tau", ["123", "132", "213", "231", "312", "321"])
    def test_every_size_three_pattern_is_catalan(self, tau):
        """Av(τ) has the same counts for all six τ of size 3."""
        assert av(tau, 8).counts() == [1, 2, 5, 14, 42, 132, 429, 1430]

    @pytest.mark.parametrize(
        "cls",
        [
            av("132", 5),
            av("213,231,312", 5),
            av("123,321", 5),
            av("2413,3142", 5),
            full_class(4),
            downward_closure([P("2431"), P("3412")]),
            downward_closure([P("12345"), P("54321")]),
        ],
    )
    def test_basis_round_trip(self, cls):
        """Enumerating from the extracted basis rebuilds the class."""
        assert enumerate_av(basis_of(cls), cls.max_size).levels == cls.levels

    @settings(max_examples=50, deadline=None)
    @given(generators)
    def test_round_trip_on_random_closures(self, perms):
        """Closures of random size-4 sets survive basis extraction and re-enumeration."""
        cls = downward_closure(perms, max_size=4)
        assert enumerate_av(basis_of(cls), 4).levels == cls.levels

    @settings(max_examples=25, deadline=None)
    @given(generators)
    def test_upward_closure_keeps_lower_levels(self, perms):
        """F↑ cut back to the horizon of F is F itself."""
        cls = downward_closure(perms, max_size=4)
        assert upward_closure(cls, 6).truncate(4).levels == cls.levels

    @pytest.mark.parametrize("basis", ["132", "123", "321", "123,321", "1234,21", "2413,3142", "12345"])
    def test_monotone_membership(self, basis):
        """12…n is a member exactly when no basis element of size ≤ n is increasing; dually for n…21."""
        patterns = parse_permutation_list(basis)
        cls = enumerate_av(patterns, 6)
        for n in range(1, 7):
            rising = any(p.size <= n and p == Permutation.identity(p.size) for p in patterns)
            falling = any(p.size <= n and p == Permutation.decreasing(p.size) for p in patterns)
            assert (Permutation.identity(n) in cls) == (not rising)
            assert (Permutation.decreasing(n) in cls) == (not falling)
