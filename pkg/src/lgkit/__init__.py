"""Numerics for Laguerre-Gaussian two-mode states.

Closed-form wavefunctions, Wigner functions, marginals, fractional Fourier
and generalized Wigner transforms, each paired with an independent
truncated Fock-space or quadrature oracle.
"""
from .errors import (
    ConvergenceFailure,
    CutoffTooSmall,
    InvalidModeIndex,
    LGKitError,
    OrderNearSingular,
    QuadratureUnderResolved,
)
from .fockspace import BasisSpec, ModeIndex, OperatorMatrix, TwoModeState
from .quadrature import QuadratureSpec

__version__ = "0.1.0"

__all__ = [
    "BasisSpec",
    "ModeIndex",
    "OperatorMatrix",
    "TwoModeState",
    "QuadratureSpec",
    "LGKitError",
    "InvalidModeIndex",
    "CutoffTooSmall",
    "ConvergenceFailure",
    "QuadratureUnderResolved",
    "OrderNearSingular",
]
