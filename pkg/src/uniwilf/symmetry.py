"""
The eight automorphisms of the containment order
Generated by reverse (r), complement (c) and inverse (i).

Labels are reduced words read left to right in order of application, so
"ri" means reverse first, then invert. Every word reduces to the normal
form r? c? i? using the relations rc = cr, "i then r" = "c then i" and
"i then c" = "r then i".
"""
from __future__ import annotations

from enum import Enum
from typing import Dict, FrozenSet, Iterable, Tuple

from .perms import Permutation


class Symmetry(Enum):
    """One element of the dihedral group of order 8 acting on permutations"""
    IDENTITY = "e"
    REVERSE = "r"
    COMPLEMENT = "c"
    REVERSE_COMPLEMENT = "rc"
    INVERSE = "i"
    REVERSE_INVERSE = "ri"
    COMPLEMENT_INVERSE = "ci"
    REVERSE_COMPLEMENT_INVERSE = "rci"

    @property
    def bits(self) -> Tuple[int, int, int]:
        """(reverse, complement, inverse) flags of the normal form"""
        label = self.value
        return ("r" in label, "c" in label, "i" in label)

    @classmethod
    def from_bits(cls, r: int, c: int, i: int) -> "Symmetry":
        label = ("r" if r else "") + ("c" if c else "") + ("i" if i else "")
        return cls(label or "e")

    @classmethod
    def from_label(cls, label: str) -> "Symmetry":
        """Reduce any word over {r, c, i} (or "e") to its group element."""
        element = cls.IDENTITY
        for letter in label.strip().lower():
            if letter == "e":
                continue
            element = compose(element, cls(letter))
        return element


FULL_GROUP: FrozenSet[Symmetry] = frozenset(Symmetry)
TRIVIAL_GROUP: FrozenSet[Symmetry] = frozenset({Symmetry.IDENTITY})


def compose(first: Symmetry, then: Symmetry) -> Symmetry:
    """The symmetry obtained by applying `first` and then `then`."""
    r1, c1, i1 = first.bits
    r2, c2, i2 = then.bits
    if i1:
        # pushing r^r2 c^c2 left across i swaps the two letters
        r2, c2 = c2, r2
    return Symmetry.from_bits(r1 ^ r2, c1 ^ c2, i1 ^ i2)


def inverse_of(g: Symmetry) -> Symmetry:
    for h in Symmetry:
        if compose(g, h) is Symmetry.IDENTITY:
            return h
    raise AssertionError(f"no inverse for {g}")


COMPOSITION_TABLE: Dict[Tuple[Symmetry, Symmetry], Symmetry] = {
    (g, h): compose(g, h) for g in Symmetry for h in Symmetry
}


def _reverse(values):
    return tuple(reversed(values))


def _complement(values):
    n = len(values)
    return tuple(n + 1 - v for v in values)


def _inverse(values):
    out = [0] * len(values)
    for pos, v in enumerate(values, start=1):
        out[v - 1] = pos
    return tuple(out)


def apply_raw(g: Symmetry, values):
    r, c, i = g.bits
    if r:
        values = _reverse(values)
    if c:
        values = _complement(values)
    if i:
        values = _inverse(values)
    return values


def apply_symmetry(g: Symmetry, perm: Permutation) -> Permutation:
    """Image of a permutation under a symmetry."""
    return Permutation._trusted(apply_raw(g, perm.values))


def apply_to_set(g: Symmetry, perms: Iterable[Permutation]) -> FrozenSet[Permutation]:
    return frozenset(apply_symmetry(g, p) for p in perms)


def set_key(perms: Iterable[Permutation]) -> Tuple:
    """Canonical comparison key of a set: its sorted member keys."""
    return tuple(sorted(p.sort_key for p in perms))


def canonical_orbit_representative(
    perms: Iterable[Permutation],
    group: Iterable[Symmetry] = FULL_GROUP,
) -> FrozenSet[Permutation]:
    """
    The least image of a set over a group of symmetries.

    Two sets have equal representatives iff they lie in the same orbit.
    Images are compared by their sorted (size, one-line string) keys.

    Args:
        perms: the set to canonicalize
        group: a subgroup of the eight symmetries

    Returns:
        The canonical representative of the orbit
    """
    base = frozenset(perms)
    images = [apply_to_set(g, base) for g in group]
    return min(images, key=set_key)


def orbit(perms: Iterable[Permutation], group: Iterable[Symmetry] = FULL_GROUP) -> FrozenSet[FrozenSet[Permutation]]:
    base = frozenset(perms)
    return frozenset(apply_to_set(g, base) for g in group)
