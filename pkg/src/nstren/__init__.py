"""Exact harmonic decomposition and homogeneous-extension checks for position-space amplitudes."""

from .algebra import AlphaPoly, Scalar
from .errors import ContractFailure, NSTError
from .harmdec import HarmonicDecomposition, decompose, harmonic_basis, harmonic_dim, is_harmonic
from .nstgate import NSTReport, TermVerdict, analyze_amplitude, analyze_expr, analyze_term
from .poly4 import Poly4, parse_poly
from .powerlog import Expr, Power, PowerLogTerm, dalembertian_expr, verify_pushback

__all__ = [
    "AlphaPoly", "Scalar", "ContractFailure", "NSTError", "HarmonicDecomposition", "decompose",
    "harmonic_basis", "harmonic_dim", "is_harmonic", "NSTReport", "TermVerdict",
    "analyze_amplitude", "analyze_expr", "analyze_term", "Poly4", "parse_poly", "Expr", "Power",
    "PowerLogTerm", "dalembertian_expr", "verify_pushback",
]

__version__ = "0.1.0"
