"""
LR-words for wedge permutations
Members of Av(213, 312) increase up to their maximum and decrease after it.
Reading values 1..n-1 from the bottom, each lies left (L) or right (R) of the
maximum, which gives a word of length n-1. Pattern containment becomes
subsequence containment of words.
"""
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .perms import Permutation, contains

_WEDGE_BASIS = (Permutation((2, 1, 3)), Permutation((3, 1, 2)))


@dataclass(frozen=True)
class LRWord:
    letters: str = ""

    def __post_init__(self):
        if set(self.letters) - {"L", "R"}:
            raise DomainError(f"LR-word {self.letters!r} has letters other than L and R")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return self.letters

    def __add__(self, other: "LRWord") -> "LRWord":
        return LRWord(self.letters + other.letters)


def _other(letter: str) -> str:
    return "R" if letter == "L" else "L"


def is_wedge(sigma: Permutation) -> bool:
    return not any(contains(sigma, pattern) for pattern in _WEDGE_BASIS)


def encode_wedge(sigma: Permutation) -> LRWord:
    """
    The side of the maximum on which each value 1..n-1 sits.

    Raises:
        DomainError: if sigma contains 213 or 312
    """
    if not is_wedge(sigma):
        raise DomainError(f"{sigma} is not in Av(213, 312)")
    n = sigma.size
    apex = sigma.values.index(n)
    position = {v: i for i, v in enumerate(sigma.values)}
    return LRWord("".join("L" if position[v] < apex else "R" for v in range(1, n)))


def decode_word(word: LRWord) -> Permutation:
    """L-values ascending, then the maximum, then R-values descending."""
    n = len(word) + 1
    left = [v for v, letter in enumerate(word.letters, start=1) if letter == "L"]
    right = [v for v, letter in enumerate(word.letters, start=1) if letter == "R"]
    return Permutation._trusted(tuple(left) + (n,) + tuple(reversed(right)))


def word_contains(word: LRWord, sub: LRWord) -> bool:
    """Whether sub is a subsequence of word."""
    return minimal_prefix(word, sub) is not None


def minimal_prefix(word: LRWord, sub: LRWord) -> Optional[int]:
    """
    Length of the shortest prefix of word containing sub, by greedy leftmost
    matching; None when sub does not occur at all.
    """
    matched = 0
    if not sub.letters:
        return 0
    for index, letter in enumerate(word.letters):
        if letter == sub.letters[matched]:
            matched += 1
            if matched == len(sub):
                return index + 1
    return None


def _map_minimal(alpha: str, beta: str, minimal: str) -> str:
    # minimal = A y^k x with A minimal for alpha[:-1], x = alpha[-1], y the other letter
    if not alpha:
        return ""
    head = minimal_prefix(LRWord(minimal), LRWord(alpha[:-1]))
    run = len(minimal) - head - 1
    mapped_head = _map_minimal(alpha[:-1], beta[:-1], minimal[:head])
    last = beta[-1]
    return mapped_head + _other(last) * run + last


def wedge_bijection(alpha: LRWord, beta: LRWord, word: LRWord) -> LRWord:
    """
    Length-preserving bijection from words containing alpha to words
    containing beta.

    The minimal prefix of word containing alpha is rebuilt letter by letter
    into a minimal word for beta of the same length; the rest of word is
    carried over unchanged.

    Example:
        >>> str(wedge_bijection(LRWord("L"), LRWord("R"), LRWord("RLRL")))
        'LRRL'

    Raises:
        DomainError: if |alpha| != |beta| or word does not contain alpha
    """
    if len(alpha) != len(beta):
        raise DomainError(f"bijection needs |alpha| = |beta|, got {len(alpha)} and {len(beta)}")
    cut = minimal_prefix(word, alpha)
    if cut is None:
        raise DomainError(f"{word.letters!r} does not contain {alpha.letters!r}")
    minimal, suffix = word.letters[:cut], word.letters[cut:]
    return LRWord(_map_minimal(alpha.letters, beta.letters, minimal) + suffix)
