"""Cox rings of quotient singularities and of their resolutions.

Exact arithmetic over cyclotomic fields, Groebner bases, integer lattices,
rational polyhedral fans, finite matrix groups, invariant rings and tropical
varieties, composed into a pipeline that presents the Cox ring of
``C^n/G``, modifies its toric ambient and verifies smoothness.
"""

from .cyclotomic import CyclotomicField, CyclotomicNumber, cyclotomic_field
from .fixtures import PRESETS, load_fixture
from .groebner import Budget, BudgetExceeded, Ideal
from .groups import MatrixGroup
from .pipeline import (
    GradedPresentation,
    ResolutionReport,
    brute_force_resolve,
    cox_quotient,
    extend_generators,
    resolve_candidate,
    smoothness_check,
)
from .polynomials import MultiPolynomial, PolyRing

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "BudgetExceeded",
    "CyclotomicField",
    "CyclotomicNumber",
    "GradedPresentation",
    "Ideal",
    "MatrixGroup",
    "MultiPolynomial",
    "PRESETS",
    "PolyRing",
    "ResolutionReport",
    "brute_force_resolve",
    "cox_quotient",
    "cyclotomic_field",
    "extend_generators",
    "load_fixture",
    "resolve_candidate",
    "smoothness_check",
]
