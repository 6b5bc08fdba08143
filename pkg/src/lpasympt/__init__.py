"""Synthetic LP benchmark ladders, PDHG solving, and runtime-growth regression."""

from lpasympt.lp_core import (
    LpProblem,
    PrimalDualIterate,
    ProblemNorms,
    ResidualReport,
    SparseMatrix,
    StandardLp,
    ToleranceProfile,
    check_termination,
    matvec,
    matvec_transpose,
    residuals,
    to_standard_form,
)

__all__ = [
    "LpProblem",
    "PrimalDualIterate",
    "ProblemNorms",
    "ResidualReport",
    "SparseMatrix",
    "StandardLp",
    "ToleranceProfile",
    "check_termination",
    "matvec",
    "matvec_transpose",
    "residuals",
    "to_standard_form",
]
