__version__ = "0.1.0"

from .automaton import HybridSpec, evolve, evolve_hybrid, step_hybrid, step_uniform
from .gf2 import BitMatrix, inverse, multiply, rank
from .grid import Grid, random_grid
from .matrices import DependencyMap, basic_matrix, block_rule_matrix, hybrid_matrix, rule_matrix

__all__ = [
    "__version__",
    "BitMatrix",
    "DependencyMap",
    "Grid",
    "HybridSpec",
    "basic_matrix",
    "block_rule_matrix",
    "evolve",
    "evolve_hybrid",
    "hybrid_matrix",
    "inverse",
    "multiply",
    "random_grid",
    "rank",
    "rule_matrix",
    "step_hybrid",
    "step_uniform",
]
