"""Unit tests for the eight symmetries and orbit canonicalization."""

from hypothesis import given
from hypothesis import strategies as st

from uniwilf.perms import Permutation, contains, parse_permutation, parse_permutation_list
from uniwilf.symmetry import (
    COMPOSITION_TABLE,
    FULL_GROUP,
    TRIVIAL_GROUP,
    Symmetry,
    apply_symmetry,
    apply_to_set,
    canonical_orbit_representative,
    compose,
    inverse_of,
    orbit,
)

P = parse_permutation

permutations = st.integers(min_value=1, max_value=7).flatmap(
    lambda n: st.permutations(list(range(1, n + 1)))
).map(lambda values: Permutation(tuple(values)))
symmetries = st.sampled_from(list(Symmetry))


class TestApply:
    """Tests for the action on single permutations."""

    def test_generators_on_132(self):
        """Reverse, complement and inverse of 132."""
        assert apply_symmetry(Symmetry.REVERSE, P("132")) == P("231")
        assert apply_symmetry(Symmetry.COMPLEMENT, P("132")) == P("312")
        assert apply_symmetry(Symmetry.INVERSE, P("132")) == P("132")
        assert apply_symmetry(Symmetry.INVERSE, P("231")) == P("312")

    def test_monotones_swap_under_reverse(self):
        """Reverse exchanges the two monotones."""
        assert apply_symmetry(Symmetry.REVERSE, P("1234")) == P("4321")

    @given(symmetries, permutations, permutations)
    def test_containment_is_preserved(self, g, sigma, pi):
        """Symmetries are automorphisms of the containment order."""
        assert contains(sigma, pi) == contains(apply_symmetry(g, sigma), apply_symmetry(g, pi))


class TestGroup:
    """Tests for composition in the dihedral group."""

    @given(symmetries, symmetries, permutations)
    def test_compose_matches_action(self, g, h, perm):
        """Applying compose(g, h) equals applying g then h."""
        assert apply_symmetry(compose(g, h), perm) == apply_symmetry(h, apply_symmetry(g, perm))

    def test_table_is_closed_with_inverses(self):
        """The composition table covers all 64 pairs and every element has an inverse."""
        assert len(COMPOSITION_TABLE) == 64
        for g in Symmetry:
            assert compose(g, inverse_of(g)) is Symmetry.IDENTITY

    def test_label_reduction(self):
        """"ir" reduces to "ci" and "rr" to the identity."""
        assert Symmetry.from_label("ir") is Symmetry.COMPLEMENT_INVERSE
        assert Symmetry.from_label("rr") is Symmetry.IDENTITY
        assert Symmetry.from_label("rci") is Symmetry.REVERSE_COMPLEMENT_INVERSE


class TestOrbits:
    """Tests for set orbits and their canonical representatives."""

    def test_same_orbit_same_representative(self):
        """{123,132,231,321} and {123,213,312,321} share the first as representative."""
        first = parse_permutation_list("123,132,231,321")
        second = parse_permutation_list("123,213,312,321")
        assert canonical_orbit_representative(first) == frozenset(first)
        assert canonical_orbit_representative(second) == frozenset(first)

    def test_orbit_of_132(self):
        """132 has four images."""
        assert {next(iter(s)) for s in orbit([P("132")])} == {P("132"), P("213"), P("231"), P("312")}

    def test_trivial_group_is_identity(self):
        """Under the trivial group a set is its own representative."""
        perms = parse_permutation_list("213,321")
        assert canonical_orbit_representative(perms, TRIVIAL_GROUP) == frozenset(perms)

    @given(symmetries, st.lists(permutations, min_size=1, max_size=4))
    def test_representative_is_orbit_invariant(self, g, perms):
        """Images of a set have the same representative."""
        image = apply_to_set(g, perms)
        assert canonical_orbit_representative(image, FULL_GROUP) == canonical_orbit_representative(perms, FULL_GROUP)
