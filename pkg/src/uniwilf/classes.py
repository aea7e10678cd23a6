"""
Finite permutation classes
Level-stored classes truncated at a horizon: enumeration from a basis, the
upward closure F↑, basis extraction and closure checks.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Union

from loguru import logger

from .errors import DomainError, StructuralError
from .perms import (
    Permutation,
    deletions_raw,
    extensions_raw,
    format_set,
    parse_permutation,
)
from .schemas import ClassFile


@dataclass(frozen=True)
class Basis:
    """A set of forbidden patterns"""
    patterns: FrozenSet[Permutation] = frozenset()

    @classmethod
    def of(cls, patterns: Iterable[Permutation]) -> "Basis":
        return cls(frozenset(patterns))

    def __iter__(self) -> Iterator[Permutation]:
        return iter(sorted(self.patterns))

    def __len__(self) -> int:
        return len(self.patterns)


@dataclass(frozen=True)
class FiniteClass:
    """
    A downward-closed set of permutations stored level by level.

    Levels 1..max_size are always present (possibly empty). Downward closure
    is guaranteed by the builders in this module; `from_levels` checks it for
    externally supplied data.
    """
    levels: Mapping[int, FrozenSet[Permutation]]
    max_size: int
    _memo: Dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.max_size < 0:
            raise DomainError(f"max_size must be non-negative, got {self.max_size}")
        normalized = {}
        for k, members in self.levels.items():
            if k < 1 or k > self.max_size:
                if members:
                    raise DomainError(f"level {k} is outside 1..{self.max_size}")
                continue
            for perm in members:
                if perm.size != k:
                    raise DomainError(f"{perm} does not belong on level {k}")
            normalized[k] = frozenset(members)
        for k in range(1, self.max_size + 1):
            normalized.setdefault(k, frozenset())
        object.__setattr__(self, "levels", dict(sorted(normalized.items())))

    __hash__ = None

    @classmethod
    def from_levels(
        cls,
        levels: Mapping[int, Iterable[Permutation]],
        max_size: Optional[int] = None,
    ) -> "FiniteClass":
        """
        Build a class from externally supplied levels.

        Raises:
            StructuralError: if the levels are not downward closed
        """
        frozen = {k: frozenset(v) for k, v in levels.items()}
        if max_size is None:
            max_size = max((k for k, v in frozen.items() if v), default=0)
        if not is_downward_closed(frozen):
            raise StructuralError("levels are not downward closed")
        return cls(frozen, max_size)

    @classmethod
    def empty(cls, max_size: int) -> "FiniteClass":
        return cls({}, max_size)

    def level(self, k: int) -> FrozenSet[Permutation]:
        return self.levels.get(k, frozenset())

    def counts(self) -> List[int]:
        """Enumeration sequence c_1..c_max_size"""
        return [len(self.levels[k]) for k in range(1, self.max_size + 1)]

    def members(self) -> Iterator[Permutation]:
        for k in range(1, self.max_size + 1):
            yield from sorted(self.levels[k])

    def is_empty(self) -> bool:
        return not any(self.levels.values())

    def truncate(self, m: int) -> "FiniteClass":
        if m > self.max_size:
            raise DomainError(f"cannot truncate a class of max_size {self.max_size} at {m}")
        return FiniteClass({k: self.levels[k] for k in range(1, m + 1)}, m)

    def with_level(self, members: Iterable[Permutation]) -> "FiniteClass":
        """This class with one more level on top (closure is the caller's duty)."""
        levels = dict(self.levels)
        levels[self.max_size + 1] = frozenset(members)
        return FiniteClass(levels, self.max_size + 1)

    def __contains__(self, perm: Permutation) -> bool:
        return perm in self.levels.get(perm.size, ())

    def __len__(self) -> int:
        return sum(len(v) for v in self.levels.values())


# ==================== Enumeration ====================

def enumerate_av(basis: Union[Basis, Iterable[Permutation]], max_size: int) -> FiniteClass:
    """
    Enumerate Av(basis) up to a horizon.

    Level m+1 is grown from level m: a one-point extension of a member is
    accepted iff every one-point deletion lies in level m and it is not itself
    a basis pattern. Any smaller basis pattern it contains is already
    contained in one of its deletions.

    Args:
        basis: forbidden patterns
        max_size: horizon N >= 1

    Returns:
        Levels 1..N of Av(basis)
    """
    if max_size < 1:
        raise DomainError(f"max_size must be at least 1, got {max_size}")
    patterns = basis.patterns if isinstance(basis, Basis) else frozenset(basis)
    forbidden = {p.values for p in patterns}

    current = set() if (1,) in forbidden else {(1,)}
    raw_levels = {1: current}
    for m in range(1, max_size):
        following = set()
        seen = set()
        for values in current:
            for candidate in extensions_raw(values):
                if candidate in seen:
                    continue
                seen.add(candidate)
                if candidate in forbidden:
                    continue
                if all(d in current for d in deletions_raw(candidate)):
                    following.add(candidate)
        raw_levels[m + 1] = following
        current = following
        logger.debug(f"Av level {m + 1}: {len(following)} members from {len(seen)} candidates")

    levels = {
        k: frozenset(Permutation._trusted(v) for v in members)
        for k, members in raw_levels.items()
    }
    return FiniteClass(levels, max_size)


def full_class(max_size: int) -> FiniteClass:
    """S_{<=N}: every permutation up to the horizon."""
    return enumerate_av(Basis(), max_size)


def downward_closure(perms: Iterable[Permutation], max_size: Optional[int] = None) -> FiniteClass:
    """The smallest class containing the given permutations, truncated at max_size."""
    by_size: Dict[int, set] = {}
    for p in perms:
        by_size.setdefault(p.size, set()).add(p.values)
    top = max(by_size, default=0)
    if max_size is None:
        max_size = top
    raw: Dict[int, set] = {}
    below: set = set()
    for k in range(top, 0, -1):
        level = set(by_size.get(k, ())) | below
        raw[k] = level
        below = set()
        if k > 1:
            for values in level:
                below |= deletions_raw(values)
    levels = {
        k: frozenset(Permutation._trusted(v) for v in members)
        for k, members in raw.items()
        if k <= max_size
    }
    return FiniteClass(levels, max_size)


def is_downward_closed(leveled: Union[Mapping[int, Iterable[Permutation]], Iterable[Permutation]]) -> bool:
    """True iff every one-point deletion of every member is a member."""
    if isinstance(leveled, Mapping):
        members = {p.values for level in leveled.values() for p in level}
    else:
        members = {p.values for p in leveled}
    for values in members:
        if len(values) < 2:
            continue
        if not deletions_raw(values) <= members:
            return False
    return True


def basis_of(cls: FiniteClass) -> Basis:
    """
    Minimal permutations of size <= max_size missing from the class.

    Every basis element has all its deletions in the class, so candidates are
    the one-point extensions of the level below.
    """
    found = set()
    if not cls.level(1) and cls.max_size >= 1:
        return Basis(frozenset({Permutation.identity(1)}))
    for k in range(2, cls.max_size + 1):
        below = {p.values for p in cls.level(k - 1)}
        here = {p.values for p in cls.level(k)}
        for values in below:
            for candidate in extensions_raw(values):
                if candidate in here or candidate in found:
                    continue
                if deletions_raw(candidate) <= below:
                    found.add(candidate)
    return Basis(frozenset(Permutation._trusted(v) for v in found))


def upward_closure(cls: FiniteClass, max_size: int) -> FiniteClass:
    """
    F↑ = Av(S_{<=n} minus F), truncated at max_size.

    Raises:
        StructuralError: if the class is not downward closed
        DomainError: if max_size is below the class horizon
    """
    if max_size < cls.max_size:
        raise DomainError(f"upward closure horizon {max_size} is below max_size {cls.max_size}")
    if not is_downward_closed(cls.levels):
        raise StructuralError("upward closure needs a downward-closed class")
    if cls.max_size == 0:
        return full_class(max_size)
    return enumerate_av(basis_of(cls), max_size)


def finiteness_bound(cls: FiniteClass, k: int) -> Optional[int]:
    """
    Erdős–Szekeres bound for classes lacking both monotones of size k.

    Returns:
        (k-1)**2 when neither 12..k nor k..21 is in the class, otherwise None
        (no bound: the class may be infinite)
    """
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    if Permutation.identity(k) in cls or Permutation.decreasing(k) in cls:
        return None
    return (k - 1) ** 2


# ==================== Class files ====================

def to_class_file(cls: FiniteClass) -> ClassFile:
    return ClassFile(
        max_size=cls.max_size,
        levels={str(k): format_set(cls.levels[k]) for k in range(1, cls.max_size + 1)},
    )


def from_class_file(model: ClassFile) -> FiniteClass:
    """
    Raises:
        DomainError: on unreadable permutations or misplaced levels
        StructuralError: if the file does not describe a class
    """
    levels: Dict[int, List[Permutation]] = {}
    for key, texts in model.levels.items():
        try:
            k = int(key)
        except ValueError as exc:
            raise DomainError(f"level key {key!r} is not an integer") from exc
        levels[k] = [parse_permutation(t) for t in texts]
    return FiniteClass.from_levels(levels, model.max_size)


def load_class(path: Union[str, Path]) -> FiniteClass:
    text = Path(path).read_text(encoding="utf-8")
    return from_class_file(ClassFile.model_validate(json.loads(text)))


def save_class(cls: FiniteClass, path: Union[str, Path]) -> None:
    Path(path).write_text(to_class_file(cls).model_dump_json(indent=2), encoding="utf-8")
