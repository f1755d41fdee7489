"""Method names understood by the CLI and the bench runner."""
from __future__ import annotations

from ..care.config import SolveReport, SolverConfig
from ..care.newton import inexact_newton_gadi_solve, newton_gadi_solve
from ..care.problem import CareProblem
from ..oracle.newton_exact import newton_exact_solve

METHODS = (
    "newton-gadi",
    "newton-adi",
    "inexact-newton-gadi",
    "inexact-newton-adi",
    "newton-exact",
)


def run_method(method: str, P: CareProblem, cfg: SolverConfig) -> SolveReport:
    """Dispatch ``method``; the ``-adi`` variants force ``omega = 0`` and the
    inexact variants fall back to ``eta = 1/(k^3+1)`` when none is set."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
    if method == "newton-exact":
        return newton_exact_solve(P, cfg)
    if method.endswith("-adi"):
        cfg = cfg.replace(omega=0.0)
    if method.startswith("inexact"):
        if cfg.eta is None:
            cfg = cfg.replace(eta="inverse_cubic")
        return inexact_newton_gadi_solve(P, cfg)
    return newton_gadi_solve(P, cfg)
