"""CARE model, GADI inner iteration and Newton drivers."""
from .config import GadiParams, SolveReport, SolverConfig
from .gadi import (
    InnerResult,
    LinearizedStep,
    StopRule,
    gadi_inner_solve,
    gadi_sweep,
    linearize,
    select_alpha,
    shift_step,
)
from .newton import (
    initial_guess,
    inexact_newton_gadi_solve,
    newton_gadi_solve,
    run_newton,
)
from .problem import CareProblem, ProblemDiagnostics, care_residual, validate_problem

__all__ = [
    "CareProblem",
    "GadiParams",
    "InnerResult",
    "LinearizedStep",
    "ProblemDiagnostics",
    "SolveReport",
    "SolverConfig",
    "StopRule",
    "care_residual",
    "gadi_inner_solve",
    "gadi_sweep",
    "inexact_newton_gadi_solve",
    "initial_guess",
    "linearize",
    "newton_gadi_solve",
    "run_newton",
    "select_alpha",
    "shift_step",
    "validate_problem",
]
