"""
Pair encoding of Av(213, 231, 312)
Members are an increasing run of the a smallest values followed by the
remaining b values in decreasing order (the maximum always sits in the
decreasing run), so they correspond to pairs (a, b) with a >= 0, b >= 1.
Containment is the coordinatewise order on pairs.
"""
from typing import FrozenSet, Tuple

from .classes import FiniteClass
from .errors import DomainError
from .perms import Permutation, extensions_raw

Pair = Tuple[int, int]


def decode_pair(a: int, b: int) -> Permutation:
    """The permutation 1 2 .. a n (n-1) .. (a+1) with n = a + b."""
    if a < 0 or b < 1:
        raise DomainError(f"pair ({a}, {b}) needs a >= 0 and b >= 1")
    n = a + b
    return Permutation._trusted(tuple(range(1, a + 1)) + tuple(range(n, a, -1)))


def encode_pair(perm: Permutation) -> Pair:
    """
    Raises:
        DomainError: if perm is not in Av(213, 231, 312)
    """
    values = perm.values
    a = 0
    while a < len(values) and values[a] == a + 1:
        a += 1
    # the maximum belongs to the decreasing run
    if a == len(values):
        a -= 1
    b = len(values) - a
    if decode_pair(a, b) != perm:
        raise DomainError(f"{perm} is not an increasing-then-decreasing member of Av(213, 231, 312)")
    return (a, b)


def pair_leq(first: Pair, second: Pair) -> bool:
    return first[0] <= second[0] and first[1] <= second[1]


def covers_in_class(cls: FiniteClass, perm: Permutation) -> FrozenSet[Permutation]:
    """Members of the class one size up that cover perm."""
    upper = cls.level(perm.size + 1)
    covers = (Permutation._trusted(raw) for raw in extensions_raw(perm.values))
    return frozenset(sigma for sigma in covers if sigma in upper)
