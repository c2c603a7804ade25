"""Exact graded super linear algebra over the rationals, symmetric (co)algebras
and realization-level cohomology of commutative group schemes."""
from .errors import (
    DegenerateInterpolation,
    DegreeZeroContent,
    EquivarianceMismatch,
    FactorizationFailure,
    InvalidGroup,
    InvalidSpec,
    NotCocommutative,
    NotCommutative,
    NotConnected,
    ShapeError,
    Sym2Nonzero,
    SupersymError,
)
from .kernels import BACKEND
from .linear import FiniteGroup, GradedMap, GradedSuperSpace, Slot, braiding, direct_sum, dual, tensor
from .qmatrix import QMatrix

__all__ = [
    "BACKEND",
    "DegenerateInterpolation",
    "DegreeZeroContent",
    "EquivarianceMismatch",
    "FactorizationFailure",
    "FiniteGroup",
    "GradedMap",
    "GradedSuperSpace",
    "InvalidGroup",
    "InvalidSpec",
    "NotCocommutative",
    "NotCommutative",
    "NotConnected",
    "QMatrix",
    "ShapeError",
    "Slot",
    "Sym2Nonzero",
    "SupersymError",
    "braiding",
    "direct_sum",
    "dual",
    "tensor",
]
