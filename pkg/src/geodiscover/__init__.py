"""Automated discovery of elementary planar geometry theorems.

Given a construction and a target point, the engine enumerates candidate
relations (point identity, collinearity, concyclicity, parallelism,
perpendicularity, segment congruence), filters them over several random
numeric instances, proves the survivors with exact symbolic computation, and
reports only the non-trivial, relevant ones grouped into equivalence classes.
"""

__version__ = "0.1.0"

from .construction import Construction, apply_step, build, evaluate_numeric
from .dsl import parse_dsl, parse_statement, to_dsl
from .engine import DiscoveryConfig, discover, prove_statement
from .report import DiscoveryReport

__all__ = [
    "Construction",
    "DiscoveryConfig",
    "DiscoveryReport",
    "apply_step",
    "build",
    "discover",
    "evaluate_numeric",
    "parse_dsl",
    "parse_statement",
    "prove_statement",
    "to_dsl",
    "__version__",
]
