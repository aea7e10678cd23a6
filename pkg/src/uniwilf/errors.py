"""
Exception hierarchy for uniwilf.

Every error raised on purpose by the library derives from UniwilfError so the
CLI can map it to an exit status. Messages always name the offending value.
"""


class UniwilfError(Exception):
    """Base class for all uniwilf errors"""


class DomainError(UniwilfError, ValueError):
    """A value lies outside the domain of an operation"""


class StructuralError(DomainError):
    """A leveled set violates a structural invariant (e.g. downward closure)"""


class PreconditionError(DomainError):
    """An operation's documented precondition does not hold"""


class StalenessError(DomainError):
    """An extension vector was built against a different class"""


class UsageError(UniwilfError):
    """Command-line usage problem (exit status 2)"""
