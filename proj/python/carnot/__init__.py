"""Exact symbolic calculus for Carnot groups.

Thin wrapper over the C++ core: exact rational polynomial algebra, group laws
derived from structure constants via the Baker-Campbell-Hausdorff series,
invariant vector fields, sub-Laplacians, Bochner-type identity checks, and the
Heisenberg maximum-modulus counterexample pipeline.
"""

from ._carnot import (
    CarnotError,
    Group,
    Poly,
    counterexample_f,
    random_poly,
    right_excess_witness,
    strict_max_radius,
    verify_counterexample,
    __version__,
)

__all__ = [
    "CarnotError",
    "Group",
    "Poly",
    "counterexample_f",
    "random_poly",
    "right_excess_witness",
    "strict_max_radius",
    "verify_counterexample",
    "__version__",
]
