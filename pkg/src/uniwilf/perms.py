"""
Permutations in one-line notation
Parsing, formatting, classical pattern containment and the cover relation
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache, total_ordering
from typing import FrozenSet, Iterable, Iterator, List, Sequence, Tuple, Union

from .errors import DomainError

Raw = Tuple[int, ...]


@total_ordering
@dataclass(frozen=True)
class Permutation:
    """
    A permutation of 1..n in one-line notation.

    Ordering is canonical: by size first, then by the one-line string.
    """
    values: Raw

    def __post_init__(self):
        values = tuple(self.values)
        if not values:
            raise DomainError("a permutation needs at least one value")
        if sorted(values) != list(range(1, len(values) + 1)):
            raise DomainError(f"{values!r} is not a rearrangement of 1..{len(values)}")
        object.__setattr__(self, "values", values)

    @classmethod
    def _trusted(cls, values: Raw) -> "Permutation":
        # hot paths only: values are already known to be a permutation
        perm = object.__new__(cls)
        object.__setattr__(perm, "values", values)
        return perm

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._trusted(tuple(range(1, n + 1)))

    @classmethod
    def decreasing(cls, n: int) -> "Permutation":
        return cls._trusted(tuple(range(n, 0, -1)))

    @property
    def size(self) -> int:
        return len(self.values)

    @property
    def sort_key(self) -> Tuple[int, Union[Raw, str]]:
        # digit strings order like their value tuples
        if len(self.values) <= 9:
            return (len(self.values), self.values)
        return (len(self.values), str(self))

    def is_increasing(self) -> bool:
        return self.values == tuple(range(1, len(self.values) + 1))

    def is_decreasing(self) -> bool:
        return self.values == tuple(range(len(self.values), 0, -1))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __getitem__(self, index):
        return self.values[index]

    def __lt__(self, other: "Permutation") -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        if len(self.values) <= 9:
            return "".join(str(v) for v in self.values)
        return ",".join(str(v) for v in self.values)

    def __repr__(self) -> str:
        return f"Permutation({self})"


# ==================== Text format ====================

def parse_permutation(text: str) -> Permutation:
    """
    Parse a permutation from its text form.

    Args:
        text: a digit string such as "2431" (all values <= 9) or a
            comma-separated list such as "2,4,3,1"

    Returns:
        The permutation with that one-line notation

    Raises:
        DomainError: on empty input, non-integers, repeats or gaps
    """
    cleaned = text.strip()
    if not cleaned:
        raise DomainError("empty permutation text")
    try:
        if "," in cleaned:
            values = tuple(int(part) for part in cleaned.split(","))
        else:
            values = tuple(int(ch) for ch in cleaned)
    except ValueError as exc:
        raise DomainError(f"cannot read permutation from {text!r}") from exc
    return Permutation(values)


def parse_permutation_list(text: str) -> List[Permutation]:
    """Parse a comma-separated list of digit-string permutations, e.g. "213,231,312"."""
    parts = [part.strip() for part in text.split(",") if part.strip()]
    return [parse_permutation(part) for part in parts]


def format_set(perms: Iterable[Permutation]) -> List[str]:
    """Serialize a set of permutations as a canonically sorted list of strings."""
    return [str(p) for p in sorted(perms)]


def permutations_of_size(n: int) -> Iterator[Permutation]:
    """All permutations of size n in canonical order."""
    for values in itertools.permutations(range(1, n + 1)):
        yield Permutation._trusted(values)


# ==================== Containment ====================

@lru_cache(maxsize=4096)
def _containment_plan(needle: Raw) -> Tuple[Tuple[int, int], ...]:
    """
    For each needle index j, the earlier indices holding the nearest smaller
    and nearest larger values (-1 when absent).
    """
    plan = []
    for j, v in enumerate(needle):
        below, below_val = -1, 0
        above, above_val = -1, len(needle) + 1
        for i in range(j):
            u = needle[i]
            if below_val < u < v:
                below, below_val = i, u
            elif v < u < above_val:
                above, above_val = i, u
        plan.append((below, above))
    return tuple(plan)


def occurs_in(haystack: Sequence[int], needle: Raw) -> bool:
    """Raw containment test on value sequences (needle must be standardized)."""
    n, k = len(haystack), len(needle)
    if k > n:
        return False
    if k == n:
        return _standardize(haystack) == needle
    plan = _containment_plan(needle)
    chosen = [0] * k

    def place(j: int, start: int) -> bool:
        if j == k:
            return True
        below, above = plan[j]
        lo = haystack[chosen[below]] if below >= 0 else 0
        hi = haystack[chosen[above]] if above >= 0 else n + 1
        for pos in range(start, n - k + j + 1):
            h = haystack[pos]
            if lo < h < hi:
                chosen[j] = pos
                if place(j + 1, pos + 1):
                    return True
        return False

    return place(0, 0)


def contains(haystack: Permutation, needle: Permutation) -> bool:
    """
    Classical pattern containment: True iff haystack has a subsequence
    order-isomorphic to needle.
    """
    return occurs_in(haystack.values, needle.values)


# ==================== Covers ====================

def _standardize(seq: Sequence[int]) -> Raw:
    ranks = {v: r for r, v in enumerate(sorted(seq), start=1)}
    return tuple(ranks[v] for v in seq)


def deletions_raw(values: Raw) -> FrozenSet[Raw]:
    """Distinct patterns obtained by deleting one point of a raw permutation."""
    out = set()
    for v in values:
        out.add(tuple(x - (x > v) for x in values if x != v))
    return frozenset(out)


def extensions_raw(values: Raw) -> FrozenSet[Raw]:
    """Distinct permutations obtained by inserting one point into a raw permutation."""
    n = len(values)
    out = set()
    for v in range(1, n + 2):
        shifted = [x + (x >= v) for x in values]
        for pos in range(n + 1):
            out.add(tuple(shifted[:pos] + [v] + shifted[pos:]))
    return frozenset(out)


def one_point_extensions(perm: Permutation) -> FrozenSet[Permutation]:
    """All permutations of size n+1 that cover perm."""
    return frozenset(Permutation._trusted(raw) for raw in extensions_raw(perm.values))


def one_point_deletions(perm: Permutation) -> FrozenSet[Permutation]:
    """
    All patterns of size n-1 obtained by deleting one point and renormalizing.

    Raises:
        DomainError: for a permutation of size 1
    """
    if perm.size < 2:
        raise DomainError(f"cannot delete a point from {perm} (size 1)")
    return frozenset(Permutation._trusted(raw) for raw in deletions_raw(perm.values))
