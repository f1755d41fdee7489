"""Exact and inexact Newton-GADI drivers for the CARE."""
from __future__ import annotations

import logging
import time
from typing import Callable, NamedTuple

import numpy as np
import scipy.linalg as sla

from .. import matcore
from ..exceptions import (
    IndefiniteWeight,
    InvalidUserGuess,
    NonFinite,
    SingularInitialization,
    SingularShift,
)
from ..oracle.kronecker import LYAP_MAX_N, lyap_direct
from .config import GadiParams, SolveReport, SolverConfig
from .gadi import StopRule, gadi_inner_solve, linearize, select_alpha
from .problem import CareProblem, care_residual, care_residual_fro

logger = logging.getLogger(__name__)

USER_GUESS_RTOL = 1e-10
PSD_RTOL = 1e-10
#: growth applied to alpha when alpha*I + A_k turns out singular
ALPHA_RETRY_FACTOR = 1.1
ALPHA_RETRIES = 20


def _solve_shifted_lyapunov(B: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    # B* X + X B = rhs
    if B.shape[0] <= LYAP_MAX_N:
        return lyap_direct(B, rhs)
    return sla.solve_continuous_lyapunov(B.conj().T, rhs)


def initial_guess(P: CareProblem, policy="algorithm_step1") -> np.ndarray:
    """Hermitian starting matrix ``X_0`` for the Newton iteration.

    ``"algorithm_step1"`` sets ``beta = 1 + ||A||_inf``, ``B = A + beta I``,
    solves ``B* X + X B = 2 Q`` and returns ``X^{-1}``. If ``X`` is numerically
    singular (rank-deficient ``Q``) it is shifted by
    ``delta = max(eps ||X||_F, 1e-13)`` before inversion.
    ``"algorithm_step1_negated"`` uses ``B = -(A + beta I)`` instead,
    ``"zero"`` returns the zero matrix and an array is validated and used as is.
    """
    n = P.n
    if isinstance(policy, np.ndarray) or not isinstance(policy, str):
        X0 = matcore.as_matrix(policy, "X0", square=True)
        if X0.shape != (n, n):
            raise InvalidUserGuess(f"initial guess has shape {X0.shape}, expected {(n, n)}")
        if matcore.hermitian_defect(X0) > USER_GUESS_RTOL * max(np.linalg.norm(X0), 1.0):
            raise InvalidUserGuess("initial guess is not Hermitian")
        return matcore.hermitian_project(X0)
    if policy == "zero":
        return np.zeros((n, n), dtype=np.complex128)
    if policy not in ("algorithm_step1", "algorithm_step1_negated"):
        raise ValueError(f"unknown init policy {policy!r}")

    q_eigs = np.linalg.eigvalsh(P.Q)
    if q_eigs.size and q_eigs.min() < -PSD_RTOL * max(np.abs(q_eigs).max(), 1e-300):
        raise IndefiniteWeight(f"Q must be positive semi-definite, min eigenvalue {q_eigs.min():.3e}")

    beta = 1.0 + matcore.norm(P.A, "inf")
    B = P.A + beta * np.eye(n)
    if policy == "algorithm_step1_negated":
        B = -B
    X = matcore.hermitian_project(_solve_shifted_lyapunov(B, 2.0 * P.Q))
    fac = matcore.lu_factor(X)
    if fac.singular:
        delta = max(np.finfo(float).eps * np.linalg.norm(X), 1e-13)
        logger.info("step-1 Lyapunov solution is singular; adding ridge %.3e", delta)
        X = X + delta * np.eye(n)
        fac = matcore.lu_factor(X)
        if fac.singular:
            raise SingularInitialization("X + delta*I is still singular")
    X0 = matcore.solve(fac, np.eye(n, dtype=np.complex128))
    return matcore.hermitian_project(X0)


class StepOutcome(NamedTuple):
    X: np.ndarray
    count: int
    lyap_residual: float
    alpha: float
    cap_hit: bool
    eta: float = float("nan")


StepFn = Callable[[int, np.ndarray], StepOutcome]


def run_newton(
    P: CareProblem,
    cfg: SolverConfig,
    method: str,
    step_fn: StepFn,
    callback: Callable[[int, np.ndarray, np.ndarray], None] | None = None,
) -> SolveReport:
    """Outer Newton loop shared by every driver.

    ``step_fn(k, X_k)`` performs the k-th linearized solve. The loop stops
    when NRes drops below ``cfg.eps_out``, after ``cfg.k_max`` steps, or when
    NRes exceeds ``cfg.divergence_factor`` times its running minimum.
    """
    t0 = time.perf_counter()
    X = initial_guess(P, cfg.init)
    nres_hist, counts, alphas, lyaps, etas = [], [], [], [], []
    cap_hits = 0
    termination = "outer_cap"
    best = np.inf
    last_cap = False
    for k in range(cfg.k_max):
        try:
            out = step_fn(k, X)
        except (NonFinite, SingularShift) as exc:
            logger.warning("%s: step %d failed (%s)", method, k, exc)
            termination = "divergence"
            break
        counts.append(out.count)
        alphas.append(out.alpha)
        lyaps.append(out.lyap_residual)
        etas.append(out.eta)
        last_cap = out.cap_hit
        cap_hits += int(out.cap_hit)
        if not np.all(np.isfinite(out.X)):
            nres_hist.append(float("nan"))
            termination = "divergence"
            break
        if callback is not None:
            callback(k, X, out.X)
        X = out.X
        _, nres = care_residual(P, X)
        nres_hist.append(nres)
        logger.debug("%s k=%d nres=%.3e inner=%d", method, k, nres, out.count)
        if nres < cfg.eps_out:
            termination = "converged"
            break
        if not np.isfinite(nres) or nres > cfg.divergence_factor * best:
            termination = "divergence"
            break
        best = min(best, nres)
    if termination == "outer_cap" and last_cap:
        termination = "inner_cap_hit"
    if cfg.symmetrize_iterates and np.all(np.isfinite(X)):
        X = matcore.hermitian_project(X)
    defect = matcore.hermitian_defect(X) if np.all(np.isfinite(X)) else float("nan")
    return SolveReport(
        method=method,
        solution=X,
        nres_history=nres_hist,
        inner_counts=counts,
        alpha_history=alphas,
        lyap_residuals=lyaps,
        termination=termination,
        wall_time=time.perf_counter() - t0,
        hermitian_defect_final=defect,
        inner_cap_hits=cap_hits,
        eta_history=etas,
        omega=cfg.omega,
    )


def _gadi_step_fn(P: CareProblem, cfg: SolverConfig, rule: str) -> StepFn:
    def step(k: int, X_k: np.ndarray) -> StepOutcome:
        if cfg.alpha == "auto":
            alpha = select_alpha(P.K @ X_k - P.A)
        else:
            alpha = float(cfg.alpha)
        for _ in range(ALPHA_RETRIES):
            try:
                lin = linearize(P, X_k, alpha)
                break
            except SingularShift:
                alpha *= ALPHA_RETRY_FACTOR
        else:
            raise SingularShift(f"no nonsingular shift found near alpha = {alpha:g}")
        eta = float("nan")
        if rule == "inexact":
            eta = cfg.eta_at(k)
            tol = eta * care_residual_fro(P, X_k)
        else:
            tol = cfg.eps_inn
        stop = StopRule(rule, tol, cfg.l_max, cfg.inner_check_stride)
        res = gadi_inner_solve(
            P, X_k, lin, GadiParams(alpha, cfg.omega), stop, cfg.symmetrize_iterates
        )
        return StepOutcome(res.X, res.count, res.lyap_residual, alpha, res.cap_hit, eta)

    return step


def _method_name(base: str, omega: float) -> str:
    return f"{base}-adi" if omega == 0.0 else f"{base}-gadi"


def newton_gadi_solve(P: CareProblem, cfg: SolverConfig | None = None) -> SolveReport:
    """Newton-GADI: each Lyapunov step is iterated until the CARE residual
    of the inner iterate (Frobenius) drops below ``eps_inn`` or ``l_max``
    sweeps are spent."""
    cfg = cfg or SolverConfig()
    rule = cfg.inner_rule or "care"
    return run_newton(P, cfg, _method_name("newton", cfg.omega), _gadi_step_fn(P, cfg, rule))


def inexact_newton_gadi_solve(P: CareProblem, cfg: SolverConfig | None = None) -> SolveReport:
    """Inexact Newton-GADI.

    Step ``k`` stops once the Lyapunov residual satisfies
    ``||R_k||_F <= eta_k ||A* X_k + X_k A - X_k K X_k + Q||_F``. Without a
    config the schedule is ``1/(k^3+1)``.
    """
    cfg = cfg or SolverConfig(eta="inverse_cubic")
    if cfg.eta is None:
        raise ValueError("the inexact driver needs an eta schedule")
    rule = cfg.inner_rule or "inexact"
    return run_newton(
        P, cfg, _method_name("inexact-newton", cfg.omega), _gadi_step_fn(P, cfg, rule)
    )
