"""Newton-Kleinman iteration with every Lyapunov step solved directly.

This is the reference the GADI-based drivers are compared against: same
initialization and outer stopping rule, but each linearized equation is
solved exactly through the Kronecker lift.
"""
from __future__ import annotations

import numpy as np

from ..care import newton as care_newton
from ..care.config import SolveReport, SolverConfig
from ..care.problem import CareProblem
from ..exceptions import TooLarge
from .kronecker import LYAP_MAX_N, lyap_direct


def newton_exact_solve(P: CareProblem, cfg: SolverConfig | None = None) -> SolveReport:
    """Exact Newton for the CARE.

    ``report.monotone_defects[j]`` is ``max(0, lambda_max(X_{j+2} - X_{j+1}))``,
    i.e. how far the iterates from ``X_1`` on violate ``X_{k+1} <= X_k``.
    """
    cfg = cfg or SolverConfig()
    if P.n > LYAP_MAX_N:
        raise TooLarge(f"newton_exact_solve is limited to n <= {LYAP_MAX_N}, got n = {P.n}")
    defects: list[float] = []

    def step(k: int, X_k: np.ndarray) -> care_newton.StepOutcome:
        KX = P.K @ X_k
        A_k = KX - P.A
        F_k = X_k @ KX + P.Q
        X = lyap_direct(A_k, F_k)
        lyap = float(np.linalg.norm(A_k.conj().T @ X + X @ A_k - F_k))
        return care_newton.StepOutcome(X, 1, lyap, float("nan"), False)

    def track(k: int, X_prev: np.ndarray, X_next: np.ndarray) -> None:
        if k == 0:
            return
        D = X_next - X_prev
        D = (D + D.conj().T) / 2
        defects.append(max(0.0, float(np.linalg.eigvalsh(D).max())))

    report = care_newton.run_newton(P, cfg, "newton-exact", step, callback=track)
    report.monotone_defects = defects
    return report
