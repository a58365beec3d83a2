"""Exception types shared across the package."""


class GroupConstructionError(ValueError):
    """A multiplication table violates one of the group axioms."""


class CapacityError(RuntimeError):
    """An exhaustive computation was requested above its configured bound."""


class SpecParseError(ValueError):
    """A group spec, subset literal or structured-set spec could not be parsed."""
