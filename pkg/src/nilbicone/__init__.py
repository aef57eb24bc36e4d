"""Exact computations with nilpotent bicones, principal bicones and nullcones of sl_n."""

from .dimension import Budget, BudgetExceeded, DimensionResult, dimension_report, groebner, krull_dimension
from .invariants import InvariantFamily, PolarizedFamily, build_invariants_sl, polarize, polarized_family
from .liealg import LieAlgebra, build_sl
from .polyring import Ideal, Poly, Ring
from .report import Report
from .rootsys import RootDatum, build_root_datum, component_lower_bound
from .varieties import Kind, PairPoint, VarietySpec, build_variety, variety

__version__ = "0.1.0"

__all__ = [
    "Budget", "BudgetExceeded", "DimensionResult", "dimension_report", "groebner", "krull_dimension",
    "InvariantFamily", "PolarizedFamily", "build_invariants_sl", "polarize", "polarized_family",
    "LieAlgebra", "build_sl", "Ideal", "Poly", "Ring", "Report", "RootDatum", "build_root_datum",
    "component_lower_bound", "Kind", "PairPoint", "VarietySpec", "build_variety", "variety",
]
