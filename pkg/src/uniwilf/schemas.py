"""
Pydantic schemas for files and reports
Every JSON document read or written by uniwilf is one of these models.
Permutation arrays are canonically sorted strings; no timestamps.
"""
from typing import Dict, List, Optional

from pydantic import BaseModel, Field


# ============================================================================
# CLASS FILES
# ============================================================================

class ClassFile(BaseModel):
    """Interchange format for finite classes"""
    max_size: int = Field(ge=0, description="Truncation horizon n")
    levels: Dict[str, List[str]] = Field(
        default_factory=dict,
        description="Size -> sorted one-line permutations",
    )


# ============================================================================
# WILF METRICS
# ============================================================================

class BasisReport(BaseModel):
    """Minimal forbidden patterns of a class up to its horizon"""
    max_size: int
    basis: List[str]


class BalanceReportModel(BaseModel):
    """Involvement counts |C_n ∩ Inv(π)| for every π in C_k"""
    k: int
    n: int
    horizon: int
    counts: Dict[str, int]
    balanced: bool


class WilfPartitionModel(BaseModel):
    """Classes of C_k with identical count vectors through the horizon"""
    k: int
    horizon: int
    blocks: List[List[str]]


class WilfSequenceModel(BaseModel):
    """Number of blocks per size, with the uniquely-Wilf verdict"""
    horizon: int
    sequence: List[int]
    uniquely_wilf: bool


# ============================================================================
# EXTENSION SEARCH
# ============================================================================

class ExtensionModel(BaseModel):
    """One potential extension X ⊆ (F↑)_{n+1}"""
    members: List[str]
    size: int
    orbit_size: int = 1
    full: bool


class ExtensionReport(BaseModel):
    """All potential extensions of a class to the next size"""
    max_size: int
    candidates: List[str]
    constraint_form: str
    require_monotone: bool
    symmetry_reduction: bool
    total: int = Field(description="Number of extensions counting orbit members")
    extensions: List[ExtensionModel]


class SearchNodeModel(BaseModel):
    """A node of the bottom-up search tree"""
    node_id: str
    max_size: int
    level_counts: List[int]
    via_full: bool
    status: str
    extension_sizes: List[int] = Field(default_factory=list)
    orbit_sizes: List[int] = Field(default_factory=list)
    dies_within: Optional[int] = None
    frontier_class: Optional[ClassFile] = None
    children: List["SearchNodeModel"] = Field(default_factory=list)


SearchNodeModel.model_rebuild()


class LevelLogModel(BaseModel):
    size: int
    extensions_found: int
    expanded: int


class SearchReport(BaseModel):
    """Outcome of a bottom-up search, resumable from its frontier"""
    status: str
    max_size: int
    branch_cap: int
    nodes_expanded: int
    constraint_form: str
    symmetry_reduction: bool = True
    filter_lower_levels: bool = False
    levels: List[LevelLogModel]
    root: SearchNodeModel


# ============================================================================
# PEGS, WEDGES, ORBITS
# ============================================================================

class GridReport(BaseModel):
    peg: str
    filled: bool
    properly_pegged: bool
    permutation: Optional[str] = None
    member: Optional[bool] = None
    size: Optional[int] = None
    members: Optional[List[str]] = None


class WedgeReport(BaseModel):
    operation: str
    inputs: Dict[str, str]
    result: str


class OrbitReport(BaseModel):
    group_size: int
    representatives: List[List[str]]
    orbit_sizes: List[int]
