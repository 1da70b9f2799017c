"""Weighted independent set counting for (claw, odd hole)-free and (fork, odd hole)-free graphs."""

from .context import RunContext
from .cutset import count_claw_odd_hole_free, count_with_cutsets, decompose_cutsets
from .errors import BudgetExceeded, CapExceeded, InputError, NotInClass, NotLineGraphOfBipartite
from .fork import count_fork_free, count_max_weight, count_prime_fork_free
from .graph import Estimate, WeightedGraph
from .modular import count_with_modules, extended_tree, strong_modules

__all__ = [
    "BudgetExceeded",
    "CapExceeded",
    "Estimate",
    "InputError",
    "NotInClass",
    "NotLineGraphOfBipartite",
    "RunContext",
    "WeightedGraph",
    "count_claw_odd_hole_free",
    "count_fork_free",
    "count_max_weight",
    "count_prime_fork_free",
    "count_with_cutsets",
    "count_with_modules",
    "decompose_cutsets",
    "extended_tree",
    "strong_modules",
]
