"""Exact computations in equivariant quantum K-theory of flag manifolds.

Layers, bottom to top: root systems, Weyl groups, exact coefficients,
formal K-modules, quantum K-rings and the affine Grassmannian side.
"""

from .errors import QKError
from .rootsys import CartanType, Coroot, RootSystem, Weight, root_system
from .weyl import AffineWeylElt, WeylElt, WeylGroup, weyl_group
from .coeffs import CoeffRing, ExactMatrix, FracElt, LaurentPoly, solve_linear
from .kmodule import KClass, ModuleSpace, module_space, phi_J
from .qkring import ChevalleyTable, RingTable, a2_quotient, a2_ring, quotient_ring

__version__ = "0.1.0"

__all__ = [
    "QKError",
    "CartanType",
    "Coroot",
    "RootSystem",
    "Weight",
    "root_system",
    "AffineWeylElt",
    "WeylElt",
    "WeylGroup",
    "weyl_group",
    "CoeffRing",
    "ExactMatrix",
    "FracElt",
    "LaurentPoly",
    "solve_linear",
    "KClass",
    "ModuleSpace",
    "module_space",
    "phi_J",
    "ChevalleyTable",
    "RingTable",
    "a2_quotient",
    "a2_ring",
    "quotient_ring",
]
