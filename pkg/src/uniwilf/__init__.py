"""uniwilf: relative Wilf-equivalence and uniquely-Wilf permutation classes."""

from .classes import (
    Basis,
    FiniteClass,
    basis_of,
    downward_closure,
    enumerate_av,
    full_class,
    is_downward_closed,
    load_class,
    save_class,
    upward_closure,
)
from .errors import (
    DomainError,
    PreconditionError,
    StalenessError,
    StructuralError,
    UniwilfError,
    UsageError,
)
from .extensions import (
    ConstraintForm,
    ExtensionVector,
    SearchOptions,
    brute_force_extensions,
    extend,
    potential_extensions,
    stabilizer,
)
from .perms import Permutation, contains, parse_permutation
from .search import SearchResolution, SearchStatus, options_from_report, resume, search
from .symmetry import Symmetry, apply_symmetry, canonical_orbit_representative
from .wilf import (
    balance_report,
    inv_count,
    is_uniquely_wilf,
    wilf_partition,
    wilf_sequence,
)

__all__ = [
    # Permutations and symmetries
    "Permutation",
    "Symmetry",
    "apply_symmetry",
    "canonical_orbit_representative",
    "contains",
    "parse_permutation",
    # Classes
    "Basis",
    "FiniteClass",
    "basis_of",
    "downward_closure",
    "enumerate_av",
    "full_class",
    "is_downward_closed",
    "load_class",
    "save_class",
    "upward_closure",
    # Wilf metrics
    "balance_report",
    "inv_count",
    "is_uniquely_wilf",
    "wilf_partition",
    "wilf_sequence",
    # Extension search
    "ConstraintForm",
    "ExtensionVector",
    "SearchOptions",
    "SearchResolution",
    "SearchStatus",
    "brute_force_extensions",
    "extend",
    "potential_extensions",
    "options_from_report",
    "resume",
    "search",
    "stabilizer",
    # Errors
    "DomainError",
    "PreconditionError",
    "StalenessError",
    "StructuralError",
    "UniwilfError",
    "UsageError",
]
