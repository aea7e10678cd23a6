"""
Backtracking solver for binary linear-equality systems
Variables take values in {0, 1}. Constraints are stated over registered
index sets whose partial sums (ones assigned, members still free) are
maintained incrementally; each constraint narrows the interval of sums it
can still reach and forces whole sets when an interval end is hit.

Before searching, the whole equality system is brought to reduced row
echelon form over the integers. Every reduced row holds one pivot variable
and only non-pivot variables, so once the branching variables are set the
pivots follow by propagation alone.

Single-threaded by contract: a solver instance owns its incremental state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from loguru import logger

from .errors import DomainError

FREE = -1

# rows x variables above which the elimination is skipped
LINEAR_PRESOLVE_LIMIT = 1 << 16

Forced = List[Tuple[int, int]]
Equation = Tuple[Dict[int, int], int]


@dataclass(frozen=True)
class LinearEquality:
    """sum(plus) - sum(minus) == rhs, over registered set ids"""
    plus: int
    minus: Optional[int]
    rhs: int

    def sets(self) -> Tuple[int, ...]:
        return (self.plus,) if self.minus is None else (self.plus, self.minus)

    def check(self, ones: List[int], free: List[int]) -> Optional[Forced]:
        p1, pf = ones[self.plus], free[self.plus]
        if self.minus is None:
            m1 = mf = 0
        else:
            m1, mf = ones[self.minus], free[self.minus]
        low = p1 - m1 - mf
        high = p1 + pf - m1
        if self.rhs < low or self.rhs > high:
            return None
        forced: Forced = []
        if self.rhs == low:
            if pf:
                forced.append((self.plus, 0))
            if mf:
                forced.append((self.minus, 1))
        if self.rhs == high:
            if pf:
                forced.append((self.plus, 1))
            if mf:
                forced.append((self.minus, 0))
        return forced


@dataclass(frozen=True)
class EqualSums:
    """All listed sets have the same sum, optionally pinned to a target"""
    members: Tuple[int, ...]
    target: Optional[int] = None

    def sets(self) -> Tuple[int, ...]:
        return self.members

    def check(self, ones: List[int], free: List[int]) -> Optional[Forced]:
        lo = max(ones[s] for s in self.members)
        hi = min(ones[s] + free[s] for s in self.members)
        if self.target is not None:
            lo = max(lo, self.target)
            hi = min(hi, self.target)
        if lo > hi:
            return None
        forced: Forced = []
        for s in self.members:
            if not free[s]:
                continue
            if ones[s] + free[s] == lo:
                forced.append((s, 1))
            elif ones[s] == hi:
                forced.append((s, 0))
        return forced


@dataclass(frozen=True)
class WeightedRow:
    """sum(coeffs[i] * x_i) == rhs, each x_i the single member of set members[i]"""
    members: Tuple[int, ...]
    coeffs: Tuple[int, ...]
    rhs: int

    def sets(self) -> Tuple[int, ...]:
        return self.members

    def check(self, ones: List[int], free: List[int]) -> Optional[Forced]:
        low = high = 0
        for s, a in zip(self.members, self.coeffs):
            if free[s]:
                if a > 0:
                    high += a
                else:
                    low += a
            else:
                low += a * ones[s]
                high += a * ones[s]
        if not low <= self.rhs <= high:
            return None
        up, down = high - self.rhs, self.rhs - low
        forced: Forced = []
        for s, a in zip(self.members, self.coeffs):
            if not free[s]:
                continue
            over_up, over_down = abs(a) > up, abs(a) > down
            if over_up and over_down:
                return None
            if over_up:
                # the larger contribution is the only one still reachable
                forced.append((s, 1 if a > 0 else 0))
            elif over_down:
                forced.append((s, 0 if a > 0 else 1))
        return forced


# ==================== Integer elimination ====================

def _normalized(coeffs: Dict[int, int], rhs: int) -> Optional[Equation]:
    """Divide out the content of a row; None when it has no integer solution."""
    if not coeffs:
        return None if rhs else ({}, 0)
    g = 0
    for a in coeffs.values():
        g = math.gcd(g, a)
    if rhs % g:
        return None
    if g > 1:
        coeffs = {v: a // g for v, a in coeffs.items()}
        rhs //= g
    return coeffs, rhs


def _eliminate(row: Equation, pivot: Equation, col: int) -> Optional[Equation]:
    coeffs, rhs = row
    pivot_coeffs, pivot_rhs = pivot
    a, b = pivot_coeffs[col], coeffs[col]
    g = math.gcd(a, b)
    a, b = a // g, b // g
    result = {v: a * c for v, c in coeffs.items()}
    for v, c in pivot_coeffs.items():
        value = result.get(v, 0) - b * c
        if value:
            result[v] = value
        else:
            result.pop(v, None)
    return _normalized(result, a * rhs - b * pivot_rhs)


def reduce_equations(equations: Iterable[Equation], columns: Sequence[int]) -> Optional[List[Equation]]:
    """
    Gauss-Jordan elimination over the integers.

    Columns are tried as pivots in the given order; among the rows that can
    take a pivot the sparsest one is used.

    Args:
        equations: rows (coefficients by variable, right-hand side)
        columns: every variable that occurs, in pivoting order

    Returns:
        The nonzero reduced rows, or None when the system has no integer
        solution.

    Example:
        >>> reduce_equations([({0: 1, 1: 1}, 1), ({1: 1}, 1)], [1, 0])
        [({1: 1}, 1), ({0: 1}, 0)]
    """
    pending: List[Equation] = []
    for coeffs, rhs in equations:
        row = _normalized(dict(coeffs), rhs)
        if row is None:
            return None
        if row[0]:
            pending.append(row)

    pivots: List[Equation] = []
    for col in columns:
        holders = [i for i, (coeffs, _) in enumerate(pending) if col in coeffs]
        if not holders:
            continue
        pivot = pending.pop(min(holders, key=lambda i: len(pending[i][0])))
        for group in (pending, pivots):
            for i, row in enumerate(group):
                if col in row[0]:
                    reduced = _eliminate(row, pivot, col)
                    if reduced is None:
                        return None
                    group[i] = reduced
        pending = [row for row in pending if row[0]]
        pivots.append(pivot)
    if pending:
        raise DomainError(f"columns do not cover variables {sorted(set().union(*(r[0] for r in pending)))}")
    return pivots


@dataclass
class SolverStats:
    nodes: int = 0
    failures: int = 0
    solutions: int = 0
    reduced_rows: int = 0


class BinaryCSP:
    """
    A system of equalities over 0/1 variables.

    Example:
        >>> csp = BinaryCSP(3)
        >>> a, b = csp.add_set([0, 1]), csp.add_set([1, 2])
        >>> csp.add_equal_sums([a, b])
        >>> sorted(csp.solutions())
        [(0, 0, 0), (0, 1, 0), (1, 0, 1), (1, 1, 1)]
    """

    def __init__(self, num_vars: int):
        if num_vars < 0:
            raise DomainError(f"number of variables must be non-negative, got {num_vars}")
        self.num_vars = num_vars
        self._sets: List[Tuple[int, ...]] = []
        self._var_sets: List[List[int]] = [[] for _ in range(num_vars)]
        self._constraints: List = []
        self._set_constraints: List[List[int]] = []
        self._fixed: Dict[int, int] = {}
        self.stats = SolverStats()

    # ==================== Model building ====================

    def add_set(self, members: Iterable[int]) -> int:
        members = tuple(sorted(set(members)))
        for v in members:
            if not 0 <= v < self.num_vars:
                raise DomainError(f"variable {v} is outside 0..{self.num_vars - 1}")
        set_id = len(self._sets)
        self._sets.append(members)
        self._set_constraints.append([])
        for v in members:
            self._var_sets[v].append(set_id)
        return set_id

    def _add_constraint(self, constraint) -> None:
        index = len(self._constraints)
        self._constraints.append(constraint)
        for s in constraint.sets():
            self._set_constraints[s].append(index)

    def add_linear_equality(self, plus: Iterable[int], minus: Iterable[int] = (), rhs: int = 0) -> None:
        minus = tuple(minus)
        plus_id = self.add_set(plus)
        minus_id = self.add_set(minus) if minus else None
        self._add_constraint(LinearEquality(plus_id, minus_id, rhs))

    def add_equal_sums(self, set_ids: Sequence[int], target: Optional[int] = None) -> None:
        if not set_ids:
            return
        if len(set_ids) == 1 and target is None:
            return
        self._add_constraint(EqualSums(tuple(set_ids), target))

    def fix(self, var: int, value: int) -> None:
        if value not in (0, 1):
            raise DomainError(f"binary variable cannot take {value}")
        if self._fixed.get(var, value) != value:
            raise DomainError(f"variable {var} fixed to both 0 and 1")
        self._fixed[var] = value

    def equations(self) -> List[Equation]:
        """Every constraint and fixed value as integer rows sum(coeff * x) == rhs."""

        def signed(plus: Sequence[int], minus: Sequence[int] = ()) -> Dict[int, int]:
            coeffs: Dict[int, int] = {}
            for v in plus:
                coeffs[v] = coeffs.get(v, 0) + 1
            for v in minus:
                coeffs[v] = coeffs.get(v, 0) - 1
            return {v: a for v, a in coeffs.items() if a}

        rows: List[Equation] = []
        for constraint in self._constraints:
            if isinstance(constraint, LinearEquality):
                minus = () if constraint.minus is None else self._sets[constraint.minus]
                rows.append((signed(self._sets[constraint.plus], minus), constraint.rhs))
                continue
            first = self._sets[constraint.members[0]]
            rows.extend((signed(self._sets[s], first), 0) for s in constraint.members[1:])
            if constraint.target is not None:
                rows.append((signed(first), constraint.target))
        rows.extend(({var: 1}, value) for var, value in sorted(self._fixed.items()))
        return rows

    # ==================== Search ====================

    def solutions(self, order: Optional[Sequence[int]] = None, value_order: Sequence[int] = (1, 0)) -> Iterator[Tuple[int, ...]]:
        """
        Yield every satisfying assignment.

        Args:
            order: fixed variable order for branching (default 0..n-1)
            value_order: value tried first at each branch
        """
        order = list(range(self.num_vars)) if order is None else list(order)
        if sorted(order) != list(range(self.num_vars)):
            raise DomainError("variable order must list every variable exactly once")
        rows = self.equations()
        reduced: Optional[List[Equation]] = []
        if len(rows) * self.num_vars <= LINEAR_PRESOLVE_LIMIT:
            # branching variables go last so they stay free columns
            reduced = reduce_equations(rows, order[::-1])
            if reduced is None:
                logger.debug("binary CSP has no integer solution")
                self.stats = SolverStats()
                return
        state = _SearchState(self, reduced)
        self.stats = state.stats
        if not state.start(self._fixed):
            logger.debug("binary CSP infeasible at the root")
            return
        yield from state.dfs(order, 0, tuple(value_order))
        logger.debug(
            f"binary CSP: {self.stats.solutions} solutions, {self.stats.nodes} nodes, "
            f"{self.stats.failures} failures, {self.stats.reduced_rows} reduced rows"
        )


class _SearchState:
    """Incremental assignment, per-set partial sums and an undo trail"""

    def __init__(self, csp: BinaryCSP, reduced: List[Equation]):
        self.sets = list(csp._sets)
        self.var_sets = [list(s) for s in csp._var_sets]
        self.constraints = list(csp._constraints)
        self.set_constraints = [list(c) for c in csp._set_constraints]
        singletons: Dict[int, int] = {}
        for coeffs, rhs in reduced:
            variables = sorted(coeffs)
            for var in variables:
                if var not in singletons:
                    singletons[var] = len(self.sets)
                    self.sets.append((var,))
                    self.set_constraints.append([])
                    self.var_sets[var].append(singletons[var])
            members = tuple(singletons[var] for var in variables)
            index = len(self.constraints)
            self.constraints.append(WeightedRow(members, tuple(coeffs[var] for var in variables), rhs))
            for s in members:
                self.set_constraints[s].append(index)

        self.values = [FREE] * csp.num_vars
        self.ones = [0] * len(self.sets)
        self.free = [len(s) for s in self.sets]
        self.trail: List[int] = []
        self.queue: List[int] = []
        self.queued = [False] * len(self.constraints)
        self.stats = SolverStats(reduced_rows=len(reduced))

    def start(self, fixed: Dict[int, int]) -> bool:
        for index in range(len(self.constraints)):
            self._enqueue(index)
        for var, value in sorted(fixed.items()):
            if not self.assign(var, value):
                return False
        return self.propagate()

    def _enqueue(self, index: int) -> None:
        if not self.queued[index]:
            self.queued[index] = True
            self.queue.append(index)

    def _clear_queue(self) -> None:
        for index in self.queue:
            self.queued[index] = False
        self.queue.clear()

    def assign(self, var: int, value: int) -> bool:
        current = self.values[var]
        if current != FREE:
            return current == value
        self.values[var] = value
        self.trail.append(var)
        for s in self.var_sets[var]:
            self.free[s] -= 1
            self.ones[s] += value
            for index in self.set_constraints[s]:
                self._enqueue(index)
        return True

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            var = self.trail.pop()
            value = self.values[var]
            self.values[var] = FREE
            for s in self.var_sets[var]:
                self.free[s] += 1
                self.ones[s] -= value

    def propagate(self) -> bool:
        while self.queue:
            index = self.queue.pop()
            self.queued[index] = False
            forced = self.constraints[index].check(self.ones, self.free)
            if forced is None:
                self._clear_queue()
                return False
            # only free members are forced; re-queued constraints catch clashes
            for set_id, value in forced:
                for var in self.sets[set_id]:
                    if self.values[var] == FREE:
                        self.assign(var, value)
        return True

    def dfs(self, order: List[int], pos: int, value_order: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        while pos < len(order) and self.values[order[pos]] != FREE:
            pos += 1
        if pos == len(order):
            self.stats.solutions += 1
            yield tuple(self.values)
            return
        var = order[pos]
        for value in value_order:
            mark = len(self.trail)
            self.stats.nodes += 1
            if self.assign(var, value) and self.propagate():
                yield from self.dfs(order, pos + 1, value_order)
            else:
                self.stats.failures += 1
            self.undo(mark)
