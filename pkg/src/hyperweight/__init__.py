"""Finite-field evaluation codes on tori and their generalized Hamming weights."""

from .bounds import FormulaResult, dimension_formula, ghw_formula, shadow, shadow_lower_bound, zero_count_bound
from .codes import LinearCode, build_code
from .errors import BudgetExceeded, HyperweightError
from .gf import FieldSpec, make_field
from .poly import Polynomial, extremal_family
from .torus import count_common_zeros, enumerate_affine_torus, enumerate_projective_torus, evaluate
from .weights import WeightReport, ghw_bruteforce, min_distance, weight_hierarchy

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "FieldSpec",
    "FormulaResult",
    "HyperweightError",
    "LinearCode",
    "Polynomial",
    "WeightReport",
    "build_code",
    "count_common_zeros",
    "dimension_formula",
    "enumerate_affine_torus",
    "enumerate_projective_torus",
    "evaluate",
    "extremal_family",
    "ghw_bruteforce",
    "ghw_formula",
    "make_field",
    "min_distance",
    "shadow",
    "shadow_lower_bound",
    "weight_hierarchy",
    "zero_count_bound",
]
