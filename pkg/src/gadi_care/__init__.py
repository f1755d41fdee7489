"""Newton-GADI solvers for the complex continuous-time algebraic Riccati equation

    A* X + X A - X K X + Q = 0,   K = K*, Q = Q*.
"""
from . import matcore
from .care import (
    CareProblem,
    GadiParams,
    SolveReport,
    SolverConfig,
    care_residual,
    gadi_inner_solve,
    gadi_sweep,
    inexact_newton_gadi_solve,
    initial_guess,
    linearize,
    newton_gadi_solve,
    select_alpha,
    validate_problem,
)
from .oracle import newton_exact_solve

__version__ = "0.1.0"

__all__ = [
    "CareProblem",
    "GadiParams",
    "SolveReport",
    "SolverConfig",
    "care_residual",
    "gadi_inner_solve",
    "gadi_sweep",
    "inexact_newton_gadi_solve",
    "initial_guess",
    "linearize",
    "matcore",
    "newton_exact_solve",
    "newton_gadi_solve",
    "select_alpha",
    "validate_problem",
]
