"""Degree-constrained edge subsets (antifactors) on bounded-treewidth graphs."""

from .graph import DegreeConstraints, InputError, Instance, MultiGraph, is_solution
from .oracle import BudgetExceeded, enumerate_solutions

__all__ = [
    "BudgetExceeded",
    "DegreeConstraints",
    "InputError",
    "Instance",
    "MultiGraph",
    "enumerate_solutions",
    "is_solution",
]

__version__ = "0.1.0"
