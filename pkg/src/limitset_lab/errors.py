"""Exception types shared across the library."""


class LimitsetError(ValueError):
    """Base class for all library-specific errors."""


class MalformedInputError(LimitsetError):
    """Structurally invalid input (non-square matrix, bad JSON shape, ...)."""


class UnsupportedRuleError(LimitsetError):
    """An index/tail rule outside the exactly-analyzable families."""


class SizeLimitError(LimitsetError):
    """A request beyond the tested enumeration bounds."""


class PreconditionError(LimitsetError):
    """A documented operation precondition was violated."""


class MembershipError(LimitsetError):
    """A point is not a member of the ground space."""


class UndefinedCaseError(LimitsetError):
    """A case the underlying theory leaves undefined, e.g. d(emptyset; emptyset)."""
