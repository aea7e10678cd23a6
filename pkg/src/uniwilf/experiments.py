"""
Searches started from small finite classes
Every starting class has levels 1 and 2 complete and a third level that
contains both monotones 123 and 321; only the remaining size-3 members vary.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, List, Optional, Tuple

from loguru import logger

from .classes import FiniteClass
from .errors import DomainError
from .extensions import SearchOptions
from .perms import Permutation, format_set, permutations_of_size
from .schemas import OrbitReport
from .search import SearchResolution, search
from .symmetry import FULL_GROUP, canonical_orbit_representative, set_key

MONOTONES_3 = frozenset({Permutation.identity(3), Permutation.decreasing(3)})


@dataclass(frozen=True)
class StartingClass:
    level3: FrozenSet[Permutation]
    orbit_size: int

    def as_class(self) -> FiniteClass:
        return FiniteClass(
            {
                1: frozenset(permutations_of_size(1)),
                2: frozenset(permutations_of_size(2)),
                3: self.level3,
            },
            3,
        )


@dataclass(frozen=True)
class ExperimentRow:
    start: StartingClass
    resolution: SearchResolution

    @property
    def status(self) -> str:
        return self.resolution.status.value


def starting_classes(level3_size: int) -> List[StartingClass]:
    """
    Orbit representatives under the full symmetry group of the size-3 levels
    F_3 ⊇ {123, 321} with |F_3| = level3_size.
    """
    if not 2 <= level3_size <= 6:
        raise DomainError(f"level 3 size must be between 2 and 6, got {level3_size}")
    others = sorted(set(permutations_of_size(3)) - MONOTONES_3)
    orbits: Dict[Tuple, List] = {}
    for extra in itertools.combinations(others, level3_size - 2):
        level3 = MONOTONES_3 | frozenset(extra)
        rep = canonical_orbit_representative(level3, FULL_GROUP)
        entry = orbits.setdefault(set_key(rep), [rep, 0])
        entry[1] += 1
    return [StartingClass(rep, count) for _, (rep, count) in sorted(orbits.items())]


def orbit_report(starts: List[StartingClass]) -> OrbitReport:
    return OrbitReport(
        group_size=len(FULL_GROUP),
        representatives=[format_set(s.level3) for s in starts],
        orbit_sizes=[s.orbit_size for s in starts],
    )


def run_experiment(level3_size: int, max_size: int, opts: Optional[SearchOptions] = None) -> List[ExperimentRow]:
    """Search from every starting class of the given size up to max_size."""
    opts = replace(opts or SearchOptions(), max_size=max_size)
    rows = []
    for start in starting_classes(level3_size):
        resolution = search(start.as_class(), opts)
        logger.info(f"F_3 = {{{', '.join(format_set(start.level3))}}}: {resolution.status.value}")
        rows.append(ExperimentRow(start, resolution))
    return rows
