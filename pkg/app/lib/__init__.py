"""clausetrim library package: 2CNF and Horn redundancy analysis."""

from . import cnf, hardgen, ies

__all__ = [
    "cnf",
    "hardgen",
    "ies",
]
