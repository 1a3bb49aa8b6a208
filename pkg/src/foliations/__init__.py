"""Exact computations for one-dimensional holomorphic foliations with
non-isolated singularities: kernels, Milnor numbers, blow-up towers and
chart-level blow-up transforms."""

from .exact_arith import MultiPoly, poly_parse
from .foliation_local import CenterLocal, Classification, VectorField
from .symmetric_chern import CIData, chern_coeffs
from .kernel_nu import Family, NuInput, nu
from .tower import TowerState

__all__ = [
    "MultiPoly", "poly_parse", "VectorField", "CenterLocal", "Classification",
    "CIData", "chern_coeffs", "Family", "NuInput", "nu", "TowerState",
]
__version__ = "0.1.0"
