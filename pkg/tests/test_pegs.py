"""Unit tests for peg permutations and grid classes."""

import itertools

import pytest

from uniwilf.classes import downward_closure
from uniwilf.errors import DomainError
from uniwilf.pegs import (
    Decoration,
    PegPermutation,
    contains_decorated,
    grid_contains,
    grid_contains_brute,
    grid_enumerate,
    grid_filled_contains,
    inflate,
    is_disjoint_family,
    is_properly_pegged,
    parse_peg,
)
from uniwilf.perms import Permutation, one_point_deletions, parse_permutation, permutations_of_size

P = parse_permutation
EXAMPLE = "2- 3- 1."
SAMPLE_PEGS = ["1+", "1.", "2- 1.", "1+ 2-", "2- 3- 1.", "1. 3+ 2-", "3+ 1. 2-", "2+ 1+"]


def all_pegs(max_size):
    for n in range(1, max_size + 1):
        for rho in permutations_of_size(n):
            for decorations in itertools.product(list(Decoration), repeat=n):
                yield PegPermutation(rho, decorations)


class TestParsing:
    """Tests for parse_peg."""

    def test_example(self):
        """2- 3- 1. is 231 with decorations (-, -, .)."""
        peg = parse_peg(EXAMPLE)
        assert peg.underlying == P("231")
        assert peg.decorations == (Decoration.DOWN, Decoration.DOWN, Decoration.DOT)
        assert str(peg) == EXAMPLE

    def test_improper_pegs_parse(self):
        """Propriety is a separate check."""
        assert parse_peg("1+ 2+").size == 2

    @pytest.mark.parametrize("text", ["", "2", "2x", "a+", "1+ 1+", "1+ 3+"])
    def test_malformed(self, text):
        """Missing decorations, bad tokens and non-permutations are domain errors."""
        with pytest.raises(DomainError):
            parse_peg(text)

    def test_undecorated_pattern(self):
        """Patterns may leave points undecorated."""
        assert parse_peg("1+ 3+ 2", allow_undecorated=True).decorations[2] is None


class TestProperlyPegged:
    """Tests for the forbidden monotone intervals."""

    def test_examples(self):
        """The working example is proper; doubled + or - intervals are not."""
        assert is_properly_pegged(parse_peg(EXAMPLE))
        assert not is_properly_pegged(parse_peg("1+ 2+"))
        assert not is_properly_pegged(parse_peg("2- 1-"))

    def test_all_two_point_intervals(self):
        """Exactly three decorations of each of 12 and 21 are forbidden."""
        forbidden = {
            "1+ 2+", "1. 2+", "1+ 2.",
            "2- 1-", "2. 1-", "2- 1.",
        }
        for rho in ("12", "21"):
            for first, second in itertools.product("+-.", repeat=2):
                text = f"{rho[0]}{first} {rho[1]}{second}"
                assert is_properly_pegged(parse_peg(text)) == (text not in forbidden)

    def test_non_adjacent_values(self):
        """Positions with non-consecutive values never form an interval."""
        assert is_properly_pegged(parse_peg("1+ 3+ 2+"))


class TestMembership:
    """Tests for Grid and Grid^f membership."""

    @pytest.mark.parametrize("text, expected", [("4321", True), ("2431", True), ("123", False)])
    def test_example_memberships(self, text, expected):
        """4321 and 2431 lie in the grid class of 2- 3- 1., 123 does not."""
        assert grid_contains(parse_peg(EXAMPLE), P(text)) is expected

    def test_filled_examples(self):
        """432651 fills every cell; 231 is too small to."""
        peg = parse_peg(EXAMPLE)
        assert grid_filled_contains(peg, P("432651"))
        assert not grid_filled_contains(peg, P("231"))
        assert grid_filled_contains(parse_peg("1."), P("1"))

    def test_inflate(self):
        """Cells of sizes 3, 2, 1 give 432651."""
        assert inflate(parse_peg(EXAMPLE), (3, 2, 1)) == P("432651")
        assert inflate(parse_peg("1+ 2-"), (1, 2)) == P("132")

    @pytest.mark.parametrize("sizes", [(1, 1), (3, 2, 2), (0, 0, 0), (-1, 2, 1)])
    def test_inflate_rejects(self, sizes):
        """Wrong lengths, overfull dots, empty and negative sizes are rejected."""
        with pytest.raises(DomainError):
            inflate(parse_peg(EXAMPLE), sizes)

    def test_enumerate_examples(self):
        """Single increasing cells and the 1+ 2- wedge."""
        assert grid_enumerate(parse_peg("1+"), 5) == {Permutation.identity(5)}
        assert grid_enumerate(parse_peg("1+ 2-"), 3) == {P("123"), P("132"), P("321")}
        assert {P("4321"), P("2431")} <= grid_enumerate(parse_peg(EXAMPLE), 4)

    @pytest.mark.parametrize("text", SAMPLE_PEGS)
    def test_enumerate_agrees_with_membership(self, text):
        """grid_enumerate, the recursive test and the brute-force test agree on S_{<=5}."""
        peg = parse_peg(text)
        for n in range(1, 6):
            members = grid_enumerate(peg, n)
            filled = grid_enumerate(peg, n, filled=True)
            assert filled <= members
            for sigma in permutations_of_size(n):
                assert grid_contains(peg, sigma) == (sigma in members) == grid_contains_brute(peg, sigma)
                assert grid_filled_contains(peg, sigma) == (sigma in filled)

    @pytest.mark.parametrize("text", SAMPLE_PEGS)
    def test_grid_is_a_class(self, text):
        """Deleting a point from a member gives a member."""
        peg = parse_peg(text)
        for n in range(2, 7):
            below = grid_enumerate(peg, n - 1)
            for sigma in grid_enumerate(peg, n):
                assert one_point_deletions(sigma) <= below

    def test_grid_is_closure_of_filled(self):
        """Grid of 2- 3- 1. up to 6 is the downward closure of its filled members up to 9."""
        peg = parse_peg(EXAMPLE)
        filled = [p for m in range(1, 10) for p in grid_enumerate(peg, m, filled=True)]
        closure = downward_closure(filled, max_size=6)
        for n in range(1, 7):
            assert closure.level(n) == grid_enumerate(peg, n)

    @pytest.mark.slow
    def test_all_small_pegs(self):
        """Every peg of size <= 3: consistency on S_{<=6} and closure of Grid^f up to 12."""
        universe = [p for n in range(1, 7) for p in permutations_of_size(n)]
        for peg in all_pegs(3):
            members = {n: grid_enumerate(peg, n) for n in range(1, 7)}
            filled_members = {n: grid_enumerate(peg, n, filled=True) for n in range(1, 7)}
            for sigma in universe:
                assert grid_contains(peg, sigma) == (sigma in members[sigma.size])
                assert grid_filled_contains(peg, sigma) == (sigma in filled_members[sigma.size])
            filled = [p for m in range(1, 13) for p in grid_enumerate(peg, m, filled=True)]
            closure = downward_closure(filled, max_size=6)
            for n in range(1, 7):
                assert closure.level(n) == members[n]


class TestPegFamilies:
    """Tests for decorated containment and disjointness."""

    def test_contains_decorated(self):
        """1+ 3+ 2. contains the pattern 1+ 3+ 2, 1+ 3- 2. does not."""
        pattern = parse_peg("1+ 3+ 2", allow_undecorated=True)
        assert contains_decorated(parse_peg("1+ 3+ 2."), pattern)
        assert contains_decorated(parse_peg("2- 1+ 4+ 3-"), pattern)
        assert not contains_decorated(parse_peg("1+ 3- 2."), pattern)

    def test_disjoint_family(self):
        """Increasing and decreasing cells are disjoint; a split increasing cell is not."""
        assert is_disjoint_family([parse_peg("1+"), parse_peg("1-")], 3)
        assert not is_disjoint_family([parse_peg("1+"), parse_peg("1+ 2+")], 4)
