"""
Relative Wilf-equivalence metrics
Involvement counts, (k,n)-balance, horizon-bounded Wilf partitions, the
Wilf-sequence and the uniquely-Wilf predicate.

True relative Wilf-equivalence quantifies over every size; everything here
is certified only through an explicit horizon, which every result carries.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Tuple

from loguru import logger

from .classes import FiniteClass
from .errors import DomainError, UniwilfError
from .perms import Permutation, contains, format_set
from .schemas import BalanceReportModel, WilfPartitionModel, WilfSequenceModel


@dataclass(frozen=True)
class BalanceReport:
    """Per-pattern involvement counts for one (k, n) pair"""
    k: int
    n: int
    counts: Dict[Permutation, int]
    balanced: bool
    horizon: int

    def common_count(self):
        """The shared count when balanced and non-empty, else None"""
        if not self.balanced or not self.counts:
            return None
        return next(iter(self.counts.values()))

    def to_model(self) -> BalanceReportModel:
        return BalanceReportModel(
            k=self.k,
            n=self.n,
            horizon=self.horizon,
            counts={str(p): c for p, c in sorted(self.counts.items())},
            balanced=self.balanced,
        )


@dataclass(frozen=True)
class WilfPartition:
    """C_k split by equality of count vectors over sizes k..horizon"""
    k: int
    horizon: int
    blocks: Tuple[FrozenSet[Permutation], ...]

    def to_model(self) -> WilfPartitionModel:
        return WilfPartitionModel(
            k=self.k,
            horizon=self.horizon,
            blocks=[format_set(b) for b in self.blocks],
        )


@dataclass(frozen=True)
class WilfSequence:
    """w_1..w_N; empty levels contribute 0"""
    horizon: int
    values: Tuple[int, ...]

    def is_collapsed(self) -> bool:
        """No size has more than one equivalence class."""
        return all(w <= 1 for w in self.values)

    def to_model(self, uniquely_wilf: bool) -> WilfSequenceModel:
        return WilfSequenceModel(horizon=self.horizon, sequence=list(self.values), uniquely_wilf=uniquely_wilf)


def _check_horizon(cls: FiniteClass, n: int) -> None:
    if n < 1 or n > cls.max_size:
        raise DomainError(f"size {n} is outside the stored horizon 1..{cls.max_size}")


def inv_count(cls: FiniteClass, perm: Permutation, n: int) -> int:
    """
    |C_n ∩ Inv(π)|: members of size n that involve perm.

    Results are memoized per class on (perm, n).

    Raises:
        DomainError: if perm is not in the class or n is out of range
    """
    if perm not in cls:
        raise DomainError(f"{perm} is not a member of the class")
    _check_horizon(cls, n)
    key = (perm, n)
    cached = cls._memo.get(key)
    if cached is not None:
        return cached
    if n < perm.size:
        count = 0
    elif n == perm.size:
        count = 1
    else:
        count = sum(1 for sigma in cls.levels[n] if contains(sigma, perm))
    cls._memo[key] = count
    return count


def balance_report(cls: FiniteClass, k: int, n: int) -> BalanceReport:
    """
    Whether the class is (k, n)-balanced, with the counts behind the verdict.

    Raises:
        DomainError: unless 1 <= k <= n <= max_size
    """
    if k < 1 or k > n:
        raise DomainError(f"balance needs 1 <= k <= n, got k={k}, n={n}")
    _check_horizon(cls, n)
    counts = {perm: inv_count(cls, perm, n) for perm in sorted(cls.levels[k])}
    balanced = len(set(counts.values())) <= 1
    return BalanceReport(k=k, n=n, counts=counts, balanced=balanced, horizon=cls.max_size)


def wilf_partition(cls: FiniteClass, k: int, horizon: int) -> WilfPartition:
    """
    Group C_k by identical count vectors (|C_n ∩ Inv(π)|) for n = k..horizon.

    This is equivalence through the horizon: blocks can only split as the
    horizon grows.
    """
    if k < 1 or k > horizon:
        raise DomainError(f"partition needs 1 <= k <= horizon, got k={k}, horizon={horizon}")
    _check_horizon(cls, horizon)
    groups: Dict[Tuple[int, ...], List[Permutation]] = {}
    for perm in sorted(cls.levels[k]):
        vector = tuple(inv_count(cls, perm, n) for n in range(k, horizon + 1))
        groups.setdefault(vector, []).append(perm)
    blocks = sorted((frozenset(g) for g in groups.values()), key=min)
    return WilfPartition(k=k, horizon=horizon, blocks=tuple(blocks))


def wilf_sequence(cls: FiniteClass, horizon: int) -> WilfSequence:
    """w_k = number of blocks of wilf_partition(C, k, horizon) for k = 1..horizon."""
    _check_horizon(cls, horizon)
    values = tuple(len(wilf_partition(cls, k, horizon).blocks) for k in range(1, horizon + 1))
    return WilfSequence(horizon=horizon, values=values)


def unbalanced_pairs(cls: FiniteClass, horizon: int) -> List[Tuple[int, int]]:
    """All (k, n) with k < n <= horizon at which the class is not balanced."""
    _check_horizon(cls, horizon)
    return [
        (k, n)
        for n in range(2, horizon + 1)
        for k in range(1, n)
        if not balance_report(cls, k, n).balanced
    ]


def is_uniquely_wilf(cls: FiniteClass, horizon: int) -> bool:
    """
    Uniquely-Wilf through the horizon: (k, n)-balanced for all k < n <= horizon.

    The balance verdict is cross-checked against the Wilf-sequence; both
    views must agree.
    """
    balanced = not unbalanced_pairs(cls, horizon)
    collapsed = wilf_sequence(cls, horizon).is_collapsed()
    if balanced != collapsed:
        raise UniwilfError(
            f"balance ({balanced}) and Wilf-sequence ({collapsed}) disagree at horizon {horizon}"
        )
    logger.debug(f"uniquely-Wilf through {horizon}: {balanced}")
    return balanced
