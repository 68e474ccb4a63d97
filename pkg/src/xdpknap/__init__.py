"""Approximate 0/1 knapsack by bin-limited dynamic programming.

The solver runs in O(n log n) time and space and certifies every answer
with a greedy upper bound on the optimal profit.
"""

from .core import Instance, Item, Selection, ValidationResult, sort_by_ratio, validate_selection
from .greedy import GreedyReport, certified_error, greedy_plus
from .kernels import BACKEND
from .oracle import ExactResult, exact_exhaustive, exact_mitm, exact_solve
from .xdp import BinTable, XdpSolution, backtrack, bin_count, bin_index, xdp_solve

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BinTable",
    "ExactResult",
    "GreedyReport",
    "Instance",
    "Item",
    "Selection",
    "ValidationResult",
    "XdpSolution",
    "backtrack",
    "bin_count",
    "bin_index",
    "certified_error",
    "exact_exhaustive",
    "exact_mitm",
    "exact_solve",
    "greedy_plus",
    "sort_by_ratio",
    "validate_selection",
    "xdp_solve",
]
