"""
Bottom-up search for finite uniquely-Wilf classes
Starting from a uniquely-Wilf class, every monotone-containing potential
extension is tried in turn. A branch whose class has no potential
extension is dead; a branch reaching the horizon is kept alive along the
full-extension chain. Node expansions are capped; a capped search reports
its frontier so it can be resumed later.
"""
from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, List, Optional

from loguru import logger

from .classes import FiniteClass, from_class_file, to_class_file
from .errors import DomainError
from .extensions import (
    ConstraintForm,
    ExtensionVector,
    SearchOptions,
    _potential_extensions,
    _require_uniquely_wilf,
)
from .schemas import LevelLogModel, SearchNodeModel, SearchReport


class SearchStatus(str, Enum):
    DEAD = "dead"
    UNIQUE_FULL = "unique-full"
    UNRESOLVED = "unresolved"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass
class SearchNode:
    """
    One class visited by the search.

    dies_within is set on dead nodes: the number of further sizes after
    which every branch below has died (0 for a class with no potential
    extension at all). frontier_class is kept only on nodes left unexpanded
    by the budget.
    """
    node_id: str
    max_size: int
    level_counts: List[int]
    via_full: bool
    status: SearchStatus = SearchStatus.UNRESOLVED
    extension_sizes: List[int] = field(default_factory=list)
    orbit_sizes: List[int] = field(default_factory=list)
    children: List["SearchNode"] = field(default_factory=list)
    dies_within: Optional[int] = None
    frontier_class: Optional[FiniteClass] = None

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    def to_model(self) -> SearchNodeModel:
        return SearchNodeModel(
            node_id=self.node_id,
            max_size=self.max_size,
            level_counts=list(self.level_counts),
            via_full=self.via_full,
            status=self.status.value,
            extension_sizes=list(self.extension_sizes),
            orbit_sizes=list(self.orbit_sizes),
            dies_within=self.dies_within,
            frontier_class=to_class_file(self.frontier_class) if self.frontier_class is not None else None,
            children=[c.to_model() for c in self.children],
        )

    @classmethod
    def from_model(cls, model: SearchNodeModel) -> "SearchNode":
        try:
            status = SearchStatus(model.status)
        except ValueError as exc:
            raise DomainError(f"node {model.node_id} has unknown status {model.status!r}") from exc
        return cls(
            node_id=model.node_id,
            max_size=model.max_size,
            level_counts=list(model.level_counts),
            via_full=model.via_full,
            status=status,
            extension_sizes=list(model.extension_sizes),
            orbit_sizes=list(model.orbit_sizes),
            children=[cls.from_model(c) for c in model.children],
            dies_within=model.dies_within,
            frontier_class=from_class_file(model.frontier_class) if model.frontier_class is not None else None,
        )


@dataclass(frozen=True)
class LevelLog:
    size: int
    extensions_found: int
    expanded: int


@dataclass
class SearchResolution:
    """Overall verdict plus the tree it was read from"""
    status: SearchStatus
    root: SearchNode
    levels: List[LevelLog]
    nodes_expanded: int
    options: SearchOptions

    def frontier(self) -> List[SearchNode]:
        return [n for n in self.root.walk() if n.status is SearchStatus.BUDGET_EXHAUSTED and not n.children]

    def to_model(self) -> SearchReport:
        return SearchReport(
            status=self.status.value,
            max_size=self.options.max_size,
            branch_cap=self.options.branch_cap,
            nodes_expanded=self.nodes_expanded,
            constraint_form=self.options.constraint_form.value,
            symmetry_reduction=self.options.symmetry_reduction,
            filter_lower_levels=self.options.filter_lower_levels,
            levels=[LevelLogModel(size=l.size, extensions_found=l.extensions_found, expanded=l.expanded) for l in self.levels],
            root=self.root.to_model(),
        )


class _Budget:
    """Shared expansion counter; thread-safe"""

    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0
        self._lock = threading.Lock()

    def take(self) -> bool:
        with self._lock:
            if self.used >= self.cap:
                return False
            self.used += 1
            return True


# ==================== Tree evaluation ====================

def _settle(node: SearchNode) -> None:
    """Derive an expanded node's status from its children."""
    children = node.children
    if not children:
        node.status = SearchStatus.DEAD
        node.dies_within = 0
        return
    others = [c for c in children if not c.via_full]
    full = [c for c in children if c.via_full]
    if any(c.status in (SearchStatus.UNIQUE_FULL, SearchStatus.UNRESOLVED) for c in others):
        node.status = SearchStatus.UNRESOLVED
    elif any(c.status is SearchStatus.BUDGET_EXHAUSTED for c in children):
        node.status = SearchStatus.BUDGET_EXHAUSTED
    elif all(c.status is SearchStatus.DEAD for c in children):
        node.status = SearchStatus.DEAD
        node.dies_within = 1 + max(c.dies_within or 0 for c in children)
    elif full and full[0].status is SearchStatus.UNIQUE_FULL:
        node.status = SearchStatus.UNIQUE_FULL
    else:
        node.status = SearchStatus.UNRESOLVED
    if node.status is not SearchStatus.DEAD:
        node.dies_within = None


def _resettle(node: SearchNode) -> None:
    for child in node.children:
        _resettle(child)
    if node.children:
        _settle(node)


def _level_logs(root: SearchNode) -> List[LevelLog]:
    found: Dict[int, int] = {}
    expanded: Dict[int, int] = {}
    for node in root.walk():
        if node.frontier_class is not None or (node.status is SearchStatus.UNIQUE_FULL and not node.children):
            continue
        size = node.max_size + 1
        found[size] = found.get(size, 0) + len(node.extension_sizes)
        expanded[size] = expanded.get(size, 0) + len(node.children)
    return [LevelLog(size=s, extensions_found=found[s], expanded=expanded[s]) for s in sorted(found)]


# ==================== Expansion ====================

def _expand(cls: FiniteClass, node_id: str, via_full: bool, opts: SearchOptions, budget: _Budget, pool: Optional[ThreadPoolExecutor] = None) -> SearchNode:
    node = SearchNode(node_id=node_id, max_size=cls.max_size, level_counts=cls.counts(), via_full=via_full)
    if cls.max_size >= opts.max_size:
        node.status = SearchStatus.UNIQUE_FULL
        return node
    if not budget.take():
        node.status = SearchStatus.BUDGET_EXHAUSTED
        node.frontier_class = cls
        return node

    vectors: List[ExtensionVector] = _potential_extensions(cls, opts)
    node.extension_sizes = [v.size for v in vectors]
    node.orbit_sizes = [v.orbit_size for v in vectors]
    logger.debug(f"node {node_id} (size {cls.max_size}, counts {node.level_counts}): {len(vectors)} extensions")

    jobs = [
        (cls.with_level(v.members), f"{node_id}.{i}", v.is_full)
        for i, v in enumerate(vectors, start=1)
    ]
    if pool is not None and len(jobs) > 1:
        # only the top level fans out; subtrees run sequentially in their worker
        futures = [pool.submit(_expand, child, cid, full, opts, budget) for child, cid, full in jobs]
        node.children = [f.result() for f in futures]
    else:
        node.children = [_expand(child, cid, full, opts, budget) for child, cid, full in jobs]
    _settle(node)
    return node


def _search_options(opts: SearchOptions) -> SearchOptions:
    if not opts.require_monotone or opts.targets:
        opts = replace(opts, require_monotone=True, targets=None)
    return opts


def search(cls: FiniteClass, opts: SearchOptions = SearchOptions()) -> SearchResolution:
    """
    Explore every monotone-containing extension chain from cls up to opts.max_size.

    Returns:
        unique-full when the full-extension chain survives to the horizon and
        every other branch dies, dead when every branch dies, budget-exhausted
        when the branch cap stopped the search first, unresolved otherwise.

    Raises:
        PreconditionError: if cls is not uniquely-Wilf at its horizon
    """
    if opts.max_size < cls.max_size:
        raise DomainError(f"search horizon {opts.max_size} is below the class horizon {cls.max_size}")
    _require_uniquely_wilf(cls)
    opts = _search_options(opts)
    budget = _Budget(opts.branch_cap)
    logger.info(f"Searching from counts {cls.counts()} up to size {opts.max_size} (cap {opts.branch_cap})")

    if opts.threads > 1:
        with ThreadPoolExecutor(max_workers=opts.threads) as pool:
            root = _expand(cls, "0", True, opts, budget, pool)
    else:
        root = _expand(cls, "0", True, opts, budget)

    result = SearchResolution(root.status, root, _level_logs(root), budget.used, opts)
    logger.info(f"Search finished: {result.status.value} after {budget.used} expansions")
    return result


def options_from_report(report: SearchReport, **overrides) -> SearchOptions:
    """The options a stored search ran with, with explicit overrides applied."""
    base = SearchOptions(
        constraint_form=ConstraintForm.parse(report.constraint_form),
        symmetry_reduction=report.symmetry_reduction,
        max_size=report.max_size,
        branch_cap=report.branch_cap,
        filter_lower_levels=report.filter_lower_levels,
    )
    return replace(base, **overrides)


def resume(report: SearchReport, opts: Optional[SearchOptions] = None) -> SearchResolution:
    """
    Continue a budget-exhausted search from the frontier stored in its report.

    Without opts the search carries on with the options stored in the report.
    The budget applies afresh to the resumed part; completed subtrees are
    kept as they are.
    """
    root = SearchNode.from_model(report.root)
    if opts is None:
        opts = options_from_report(report)
    opts = _search_options(opts)
    budget = _Budget(opts.branch_cap)

    def regrow(node: SearchNode) -> SearchNode:
        if node.frontier_class is not None:
            return _expand(node.frontier_class, node.node_id, node.via_full, opts, budget)
        node.children = [regrow(c) for c in node.children]
        return node

    frontier = sum(1 for n in root.walk() if n.frontier_class is not None)
    logger.info(f"Resuming search from {frontier} frontier nodes")
    root = regrow(root)
    _resettle(root)
    return SearchResolution(root.status, root, _level_logs(root), report.nodes_expanded + budget.used, opts)
