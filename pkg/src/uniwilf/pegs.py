"""
Peg permutations and their grid classes
A peg permutation decorates each point of ρ with + (inflate into an
increasing interval), - (a decreasing interval) or . (at most one point).
Grid(ρ̃) collects all inflations; Grid^f(ρ̃) only those where +/- cells get at
least two points and . cells exactly one.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .errors import DomainError
from .perms import Permutation, _standardize


class Decoration(str, Enum):
    UP = "+"
    DOWN = "-"
    DOT = "."


@dataclass(frozen=True)
class PegPermutation:
    """
    ρ with one decoration per point.

    Decorations may be None only in patterns passed to contains_decorated,
    where an undecorated point matches any decoration.
    """
    underlying: Permutation
    decorations: Tuple[Optional[Decoration], ...]

    def __post_init__(self):
        if len(self.decorations) != self.underlying.size:
            raise DomainError(
                f"{len(self.decorations)} decorations for a permutation of size {self.underlying.size}"
            )

    @property
    def size(self) -> int:
        return self.underlying.size

    def __str__(self) -> str:
        return " ".join(f"{v}{d.value if d else ''}" for v, d in zip(self.underlying.values, self.decorations))


def parse_peg(text: str, allow_undecorated: bool = False) -> PegPermutation:
    """
    Parse whitespace-separated tokens such as "2- 3- 1.".

    Args:
        text: tokens value+symbol with symbol in {+, -, .}
        allow_undecorated: accept bare values (pattern wildcards)

    Raises:
        DomainError: on malformed tokens or values that are not a permutation
    """
    tokens = text.split()
    if not tokens:
        raise DomainError("empty peg permutation")
    values: List[int] = []
    decorations: List[Optional[Decoration]] = []
    for token in tokens:
        symbol = token[-1]
        if symbol in "+-.":
            digits, decoration = token[:-1], Decoration(symbol)
        elif allow_undecorated:
            digits, decoration = token, None
        else:
            raise DomainError(f"token {token!r} lacks a decoration (+, - or .)")
        if not digits.isdigit():
            raise DomainError(f"malformed peg token {token!r}")
        values.append(int(digits))
        decorations.append(decoration)
    return PegPermutation(Permutation(tuple(values)), tuple(decorations))


_FORBIDDEN_ASCENTS = {
    (Decoration.UP, Decoration.UP),
    (Decoration.DOT, Decoration.UP),
    (Decoration.UP, Decoration.DOT),
}
_FORBIDDEN_DESCENTS = {
    (Decoration.DOWN, Decoration.DOWN),
    (Decoration.DOT, Decoration.DOWN),
    (Decoration.DOWN, Decoration.DOT),
}


def is_properly_pegged(peg: PegPermutation) -> bool:
    """No two-element monotone interval is decorated so that it could merge into one cell."""
    rho, decs = peg.underlying.values, peg.decorations
    for i in range(len(rho) - 1):
        pair = (decs[i], decs[i + 1])
        if rho[i + 1] == rho[i] + 1 and pair in _FORBIDDEN_ASCENTS:
            return False
        if rho[i + 1] == rho[i] - 1 and pair in _FORBIDDEN_DESCENTS:
            return False
    return True


# ==================== Inflation ====================

def _size_bounds(decoration: Decoration, filled: bool) -> Tuple[int, Optional[int]]:
    if decoration is Decoration.DOT:
        return (1, 1) if filled else (0, 1)
    return (2, None) if filled else (0, None)


def inflate(peg: PegPermutation, sizes: Sequence[int]) -> Permutation:
    """
    The inflation of ρ putting sizes[i] points into cell i.

    Raises:
        DomainError: on a size vector of the wrong length, negative sizes,
            more than one point in a . cell, or no points at all
    """
    if len(sizes) != peg.size:
        raise DomainError(f"{len(sizes)} cell sizes for a peg of size {peg.size}")
    for size, decoration in zip(sizes, peg.decorations):
        if size < 0:
            raise DomainError(f"negative cell size {size}")
        if decoration is Decoration.DOT and size > 1:
            raise DomainError(f"a . cell takes at most one point, got {size}")
    if not sum(sizes):
        raise DomainError("an inflation needs at least one point")

    rho = peg.underlying.values
    # cells receive consecutive value ranges in the order of their ρ-values
    start: Dict[int, int] = {}
    next_value = 1
    for cell in sorted(range(len(rho)), key=lambda i: rho[i]):
        start[cell] = next_value
        next_value += sizes[cell]
    values: List[int] = []
    for cell, (size, decoration) in enumerate(zip(sizes, peg.decorations)):
        block = range(start[cell], start[cell] + size)
        values.extend(reversed(block) if decoration is Decoration.DOWN else block)
    return Permutation._trusted(tuple(values))


def _size_vectors(peg: PegPermutation, n: int, filled: bool) -> Iterator[Tuple[int, ...]]:
    bounds = [_size_bounds(d, filled) for d in peg.decorations]

    def build(cell: int, left: int) -> Iterator[Tuple[int, ...]]:
        if cell == len(bounds):
            if left == 0:
                yield ()
            return
        low, high = bounds[cell]
        high = left if high is None else min(high, left)
        for size in range(low, high + 1):
            for rest in build(cell + 1, left - size):
                yield (size,) + rest

    return build(0, n)


# ==================== Membership ====================

def _segment_ok(segment: Sequence[int], decoration: Decoration) -> bool:
    if len(segment) < 2:
        return True
    if decoration is Decoration.UP:
        return segment[-1] > segment[-2]
    if decoration is Decoration.DOWN:
        return segment[-1] < segment[-2]
    return False


def _member(peg: PegPermutation, sigma: Permutation, filled: bool) -> bool:
    values, n = sigma.values, sigma.size
    rho, decs = peg.underlying.values, peg.decorations
    m = len(rho)
    failed: Set[Tuple] = set()

    def place(cell: int, pos: int, ranges: Tuple) -> bool:
        if cell == m:
            return pos == n
        key = (cell, pos, ranges)
        if key in failed:
            return False
        low, high = _size_bounds(decs[cell], filled)
        high = n - pos if high is None else min(high, n - pos)
        for length in range(0, high + 1):
            segment = values[pos:pos + length]
            # a non-monotone prefix stays non-monotone
            if not _segment_ok(segment, decs[cell]):
                break
            if length < low:
                continue
            if length:
                lo, hi = min(segment), max(segment)
                clash = any(
                    r is not None and (r[1] > lo if rho[j] < rho[cell] else r[0] < hi)
                    for j, r in enumerate(ranges)
                )
                if clash:
                    continue
                signature = ranges + ((lo, hi),)
            else:
                signature = ranges + (None,)
            if place(cell + 1, pos + length, signature):
                return True
        failed.add(key)
        return False

    return place(0, 0, ())


def grid_contains(peg: PegPermutation, sigma: Permutation) -> bool:
    """sigma ∈ Grid(ρ̃)"""
    return _member(peg, sigma, filled=False)


def grid_filled_contains(peg: PegPermutation, sigma: Permutation) -> bool:
    """sigma ∈ Grid^f(ρ̃)"""
    return _member(peg, sigma, filled=True)


def grid_contains_brute(peg: PegPermutation, sigma: Permutation, filled: bool = False) -> bool:
    """Oracle: try every admissible size vector."""
    return any(inflate(peg, sizes) == sigma for sizes in _size_vectors(peg, sigma.size, filled))


def grid_enumerate(peg: PegPermutation, n: int, filled: bool = False) -> FrozenSet[Permutation]:
    """All size-n members of Grid(ρ̃), or of Grid^f(ρ̃) when filled."""
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    return frozenset(inflate(peg, sizes) for sizes in _size_vectors(peg, n, filled))


# ==================== Peg families ====================

def contains_decorated(peg: PegPermutation, pattern: PegPermutation) -> bool:
    """
    Decorated containment: some occurrence of the pattern's underlying
    permutation in ρ whose decorations agree wherever the pattern has one.
    """
    rho, decs = peg.underlying.values, peg.decorations
    target = pattern.underlying.values
    for positions in itertools.combinations(range(len(rho)), len(target)):
        if _standardize([rho[p] for p in positions]) != target:
            continue
        if all(want is None or decs[p] is want for p, want in zip(positions, pattern.decorations)):
            return True
    return False


def is_disjoint_family(pegs: Iterable[PegPermutation], n: int) -> bool:
    """Whether the size-n parts of the Grid^f sets are pairwise disjoint."""
    seen: Set[Permutation] = set()
    for peg in pegs:
        members = grid_enumerate(peg, n, filled=True)
        if seen & members:
            return False
        seen |= members
    return True
