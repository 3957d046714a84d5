"""Continuous partial maps on finite graphs and degree-2 transformation semigroups."""
from .errors import DegenerateInput, Degree2Error, DegreeViolation, InvalidInput, ResourceLimit
from .graphs import SimpleGraph
from .pfun import UNDEF, PartialFunction, compose
from .semigroup import TransformationSemigroup, closure

__version__ = "0.1.0"

__all__ = [
    "UNDEF",
    "DegenerateInput",
    "Degree2Error",
    "DegreeViolation",
    "InvalidInput",
    "PartialFunction",
    "ResourceLimit",
    "SimpleGraph",
    "TransformationSemigroup",
    "closure",
    "compose",
]
