"""Exact spectral curves of the Halphen operator (g2 = 0) and the Lamé operator."""

from .curve import SpectralCurve
from .errors import (
    DegenerateProfileError,
    HalphenError,
    InconsistentSystemError,
    InvalidGenusError,
    InvariantViolation,
    NonConstantError,
    NotACubeError,
    NotInCorpusError,
    ZeroDenominatorError,
)
from .halphen import (
    CoefficientSequence,
    GenusProfile,
    SQPair,
    apply_m,
    build_Q,
    classify,
    closed_form_F,
    compute_F,
    compute_H,
    m_coefficients,
    printed_recursion_coeffs,
    recursion_A,
    solve_pair,
    solve_S,
    spectral_curve,
)
from .lame import LameData, lame_coefficients, lame_curve
from .poly import SparsePoly
from .ring import Mode, WeierstrassElement, d_dx, d_dx_n, is_x_constant, reduce

__all__ = [
    "CoefficientSequence", "DegenerateProfileError", "GenusProfile", "HalphenError",
    "InconsistentSystemError", "InvalidGenusError", "InvariantViolation", "LameData", "Mode",
    "NonConstantError", "NotACubeError", "NotInCorpusError", "SQPair", "SparsePoly",
    "SpectralCurve", "WeierstrassElement", "ZeroDenominatorError", "apply_m", "build_Q",
    "classify", "closed_form_F", "compute_F", "compute_H", "d_dx", "d_dx_n", "is_x_constant",
    "lame_coefficients", "lame_curve", "m_coefficients", "printed_recursion_coeffs",
    "recursion_A", "reduce", "solve_S", "solve_pair", "spectral_curve",
]
