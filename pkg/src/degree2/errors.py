"""Exception hierarchy shared by every module."""


class Degree2Error(Exception):
    """Base class for all toolkit errors."""


class InvalidInput(Degree2Error, ValueError):
    """Arguments are malformed or mutually inconsistent."""


class DegenerateInput(Degree2Error, ValueError):
    """Well-formed input for which the requested object is undefined
    (isolated vertices for a strict incidence matrix, non-regular Rees matrix)."""


class ResourceLimit(Degree2Error, RuntimeError):
    """An enumeration would exceed its configured cap."""


class DegreeViolation(Degree2Error, ValueError):
    """A fiber with three or more points appeared where degree <= 2 is required."""

    def __init__(self, message, fiber=None):
        super().__init__(message)
        self.fiber = fiber
