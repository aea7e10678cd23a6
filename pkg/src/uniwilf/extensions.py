"""
Potential extensions of finite uniquely-Wilf classes
Given a finite class F with horizon n, find every X ⊆ (F↑)_{n+1} such that
F ∪ X is (k, n+1)-balanced for all k <= n, using the binary solver with one
of three equivalent constraint forms. A brute-force oracle cross-checks the
solver on small candidate sets.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from .classes import FiniteClass, upward_closure
from .config import Settings
from .errors import DomainError, PreconditionError, StalenessError
from .perms import Permutation, contains, format_set
from .schemas import ExtensionModel, ExtensionReport
from .solver import BinaryCSP
from .symmetry import Symmetry, apply_to_set, canonical_orbit_representative, set_key
from .wilf import is_uniquely_wilf

ORACLE_LIMIT = 24


class ConstraintForm(str, Enum):
    DIFFERENCE = "difference"
    RESTRICTED = "restricted-difference"
    TARGET = "target"

    @classmethod
    def parse(cls, text: str) -> "ConstraintForm":
        normalized = text.strip().lower()
        if normalized == "restricted":
            return cls.RESTRICTED
        try:
            return cls(normalized)
        except ValueError as exc:
            choices = ", ".join(f.value for f in cls)
            raise DomainError(f"unknown constraint form {text!r}; choose one of {choices}") from exc


@dataclass(frozen=True)
class SearchOptions:
    """Knobs for potential_extensions and search"""
    require_monotone: bool = True
    targets: Optional[Mapping[int, int]] = None
    constraint_form: ConstraintForm = ConstraintForm.TARGET
    symmetry_reduction: bool = True
    max_size: int = 8
    branch_cap: int = 10000
    filter_lower_levels: bool = False
    threads: int = 1

    @classmethod
    def from_settings(cls, settings: Settings, **overrides) -> "SearchOptions":
        base = cls(
            constraint_form=ConstraintForm.parse(settings.constraint_form),
            symmetry_reduction=settings.symmetry_reduction,
            max_size=settings.default_max_size,
            branch_cap=settings.branch_cap,
            threads=settings.threads,
        )
        return replace(base, **overrides)


@dataclass(frozen=True)
class ExtensionVector:
    """Indicator over the candidates (F↑)_{n+1}; X is the set of 1-bits"""
    candidates: Tuple[Permutation, ...]
    bits: Tuple[int, ...]
    orbit_size: int = 1

    def __post_init__(self):
        if len(self.bits) != len(self.candidates):
            raise DomainError(f"{len(self.bits)} bits for {len(self.candidates)} candidates")

    @classmethod
    def from_members(cls, candidates: Sequence[Permutation], members, orbit_size: int = 1) -> "ExtensionVector":
        chosen = frozenset(members)
        candidates = tuple(candidates)
        stray = chosen.difference(candidates)
        if stray:
            raise DomainError(f"{format_set(stray)} are not candidates")
        return cls(candidates, tuple(int(p in chosen) for p in candidates), orbit_size)

    @property
    def members(self) -> FrozenSet[Permutation]:
        return frozenset(p for p, b in zip(self.candidates, self.bits) if b)

    @property
    def size(self) -> int:
        return sum(self.bits)

    @property
    def is_full(self) -> bool:
        return all(self.bits)

    def to_model(self) -> ExtensionModel:
        return ExtensionModel(
            members=format_set(self.members),
            size=self.size,
            orbit_size=self.orbit_size,
            full=self.is_full,
        )


# ==================== Candidates and incidence ====================

def candidates_of(cls: FiniteClass) -> Tuple[Permutation, ...]:
    """(F↑)_{n+1} in canonical order."""
    cached = cls._memo.get("candidates")
    if cached is None:
        closure = upward_closure(cls, cls.max_size + 1)
        cached = tuple(sorted(closure.level(cls.max_size + 1)))
        cls._memo["candidates"] = cached
    return cached


def _incidence(cls: FiniteClass, candidates: Sequence[Permutation]) -> Dict[int, List[Tuple[Permutation, FrozenSet[int]]]]:
    """For each k <= n and σ ∈ F_k, the candidate indices involving σ."""
    table = {}
    for k in range(1, cls.max_size + 1):
        rows = []
        for sigma in sorted(cls.level(k)):
            hits = frozenset(i for i, pi in enumerate(candidates) if contains(pi, sigma))
            rows.append((sigma, hits))
        table[k] = rows
    return table


def _is_balanced(chosen: FrozenSet[int], rows: List[Tuple[Permutation, FrozenSet[int]]]) -> bool:
    return len({len(chosen & hits) for _, hits in rows}) <= 1


def stabilizer(cls: FiniteClass) -> FrozenSet[Symmetry]:
    """Symmetries mapping every level of the class onto itself."""
    return frozenset(
        g for g in Symmetry
        if all(apply_to_set(g, cls.level(k)) == cls.level(k) for k in range(1, cls.max_size + 1))
    )


def _monotone_indices(candidates: Sequence[Permutation], size: int) -> Optional[Tuple[int, int]]:
    index = {p: i for i, p in enumerate(candidates)}
    up = index.get(Permutation.identity(size))
    down = index.get(Permutation.decreasing(size))
    if up is None or down is None:
        return None
    return (up, down)


def _check_targets(opts: SearchOptions, top: int, num_candidates: int) -> Dict[int, int]:
    if not opts.targets:
        return {}
    if opts.constraint_form is not ConstraintForm.TARGET:
        raise PreconditionError("targets can only be pinned with the target constraint form")
    for k, t in opts.targets.items():
        if not 1 <= k <= top:
            raise PreconditionError(f"target given for size {k}, outside 1..{top}")
        if not 0 <= t <= num_candidates:
            raise PreconditionError(f"target t_{k} = {t} is outside 0..{num_candidates}")
    return dict(opts.targets)


def _build_csp(candidates, incidence, levels, form: ConstraintForm, targets: Dict[int, int]) -> BinaryCSP:
    csp = BinaryCSP(len(candidates))
    for k in levels:
        rows = incidence[k]
        if form is ConstraintForm.TARGET:
            set_ids = [csp.add_set(hits) for _, hits in rows]
            csp.add_equal_sums(set_ids, targets.get(k))
            continue
        for (_, first), (_, second) in itertools.combinations(rows, 2):
            if form is ConstraintForm.DIFFERENCE:
                csp.add_linear_equality(first, second, 0)
            else:
                plus, minus = first - second, second - first
                if plus or minus:
                    csp.add_linear_equality(plus, minus, 0)
    return csp


# ==================== Potential extensions ====================

def _solve(cls: FiniteClass, opts: SearchOptions) -> Tuple[Tuple[Permutation, ...], List[FrozenSet[int]]]:
    n = cls.max_size
    candidates = candidates_of(cls)
    targets = _check_targets(opts, n, len(candidates))
    incidence = _incidence(cls, candidates)

    levels = [n] if opts.filter_lower_levels else list(range(1, n + 1))
    csp = _build_csp(candidates, incidence, levels, opts.constraint_form, targets)
    if opts.require_monotone:
        monotones = _monotone_indices(candidates, n + 1)
        if monotones is None:
            logger.debug(f"monotones of size {n + 1} are not candidates")
            return candidates, []
        for index in monotones:
            csp.fix(index, 1)

    # candidates involving the most size-n members are branched on first
    top_rows = incidence.get(n, [])
    weight = [sum(1 for _, hits in top_rows if i in hits) for i in range(len(candidates))]
    order = sorted(range(len(candidates)), key=lambda i: (-weight[i], i))

    solutions = []
    for bits in csp.solutions(order=order):
        chosen = frozenset(i for i, b in enumerate(bits) if b)
        if opts.filter_lower_levels and not all(_is_balanced(chosen, incidence[k]) for k in range(1, n)):
            continue
        solutions.append(chosen)
    logger.debug(
        f"size {n + 1}: {len(solutions)} potential extensions over {len(candidates)} candidates "
        f"({opts.constraint_form.value}, {csp.stats.nodes} nodes)"
    )
    return candidates, solutions


def _order_key(vector: ExtensionVector):
    return (-vector.size, set_key(vector.members))


def _potential_extensions(cls: FiniteClass, opts: SearchOptions) -> List[ExtensionVector]:
    candidates, solutions = _solve(cls, opts)
    if not opts.symmetry_reduction:
        vectors = [
            ExtensionVector.from_members(candidates, (candidates[i] for i in chosen))
            for chosen in solutions
        ]
        return sorted(vectors, key=_order_key)

    group = stabilizer(cls)
    orbits: Dict[Tuple, List] = {}
    for chosen in solutions:
        members = frozenset(candidates[i] for i in chosen)
        rep = canonical_orbit_representative(members, group)
        entry = orbits.setdefault(set_key(rep), [rep, 0])
        entry[1] += 1
    vectors = [
        ExtensionVector.from_members(candidates, rep, orbit_size=count)
        for rep, count in orbits.values()
    ]
    return sorted(vectors, key=_order_key)


def _require_uniquely_wilf(cls: FiniteClass) -> None:
    if cls.max_size >= 1 and not is_uniquely_wilf(cls, cls.max_size):
        raise PreconditionError(f"class with counts {cls.counts()} is not uniquely-Wilf at its horizon")


def potential_extensions(cls: FiniteClass, opts: SearchOptions = SearchOptions()) -> List[ExtensionVector]:
    """
    Every X ⊆ (F↑)_{n+1} keeping F ∪ X balanced at size n+1.

    With require_monotone only X containing both monotones of size n+1 are
    returned. With symmetry_reduction one representative per orbit of the
    stabilizer of F is returned, annotated with its orbit size. Results are
    ordered by decreasing |X|, so the full vector comes first when present.

    Raises:
        PreconditionError: if F is not uniquely-Wilf at its own horizon, or
            targets are out of range
    """
    _require_uniquely_wilf(cls)
    return _potential_extensions(cls, opts)


def extend(cls: FiniteClass, vector: ExtensionVector) -> FiniteClass:
    """
    F ∪ X as a class with horizon n+1.

    Raises:
        StalenessError: if the vector was built over different candidates
    """
    if vector.candidates != candidates_of(cls):
        raise StalenessError(f"extension vector does not match the candidates of the class {cls.counts()}")
    return cls.with_level(vector.members)


def brute_force_extensions(cls: FiniteClass, require_monotone: bool = False) -> List[FrozenSet[Permutation]]:
    """
    Oracle: test every subset of the candidates directly for balance.

    Subsets are split into two halves whose partial counts are tabulated with
    numpy and combined by broadcasting.

    Raises:
        DomainError: for more than 24 candidates
    """
    n = cls.max_size
    candidates = candidates_of(cls)
    if len(candidates) > ORACLE_LIMIT:
        raise DomainError(f"{len(candidates)} candidates exceed the brute-force limit of {ORACLE_LIMIT}")
    incidence = _incidence(cls, candidates)

    fixed_ones: Tuple[int, ...] = ()
    if require_monotone:
        monotones = _monotone_indices(candidates, n + 1)
        if monotones is None:
            return []
        fixed_ones = tuple(sorted(set(monotones)))
    free = [i for i in range(len(candidates)) if i not in fixed_ones]
    lo_bits = len(free) // 2
    hi_bits = len(free) - lo_bits
    lo_table = (np.arange(1 << lo_bits)[:, None] >> np.arange(lo_bits)) & 1
    hi_table = (np.arange(1 << hi_bits)[:, None] >> np.arange(hi_bits)) & 1

    ok = np.ones((1 << hi_bits, 1 << lo_bits), dtype=bool)
    for k in range(1, n + 1):
        reference = None
        for _, hits in incidence[k]:
            weights = np.array([1 if i in hits else 0 for i in free], dtype=np.int64)
            base = sum(1 for i in fixed_ones if i in hits)
            lo_counts = (lo_table @ weights[:lo_bits]).astype(np.int16)
            hi_counts = (hi_table @ weights[lo_bits:]).astype(np.int16)
            totals = base + hi_counts[:, None] + lo_counts[None, :]
            if reference is None:
                reference = totals
            else:
                ok &= totals == reference

    found = []
    for hi_code, lo_code in np.argwhere(ok):
        chosen = set(fixed_ones)
        for j in range(lo_bits):
            if (int(lo_code) >> j) & 1:
                chosen.add(free[j])
        for j in range(hi_bits):
            if (int(hi_code) >> j) & 1:
                chosen.add(free[lo_bits + j])
        found.append(frozenset(candidates[i] for i in chosen))
    return sorted(found, key=lambda x: (-len(x), set_key(x)))


def extension_report(cls: FiniteClass, opts: SearchOptions, vectors: List[ExtensionVector]) -> ExtensionReport:
    return ExtensionReport(
        max_size=cls.max_size,
        candidates=format_set(candidates_of(cls)),
        constraint_form=opts.constraint_form.value,
        require_monotone=opts.require_monotone,
        symmetry_reduction=opts.symmetry_reduction,
        total=sum(v.orbit_size for v in vectors),
        extensions=[v.to_model() for v in vectors],
    )
