"""Newton linearization and the GADI inner iteration for the Lyapunov step.

Each Newton step solves ``A_k* X + X A_k = F_k`` with ``A_k = K X_k - A`` and
``F_k = X_k K X_k + Q``. One GADI sweep is two one-sided shifted solves::

    (alpha I + A_k*) X_half = X_l (alpha I - A_k) + F_k
    X_next (alpha I + A_k)  = X_l [A_k - (1 - omega) alpha I] + (2 - omega) alpha X_half

``omega = 0`` is the classical ADI double sweep.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .. import matcore
from ..exceptions import SingularShift
from .config import INNER_RULES, GadiParams
from .problem import CareProblem, care_residual_fro


@dataclass(frozen=True, eq=False)
class LinearizedStep:
    """Data of one Newton step plus the two shift factorizations.

    ``left_factor`` factors ``alpha I + A_k*`` and ``right_factor`` factors
    ``alpha I + A_k``; both are reused by every sweep of the step.
    """

    A_k: np.ndarray
    F_k: np.ndarray
    alpha: float
    left_factor: matcore.LuFactorization
    right_factor: matcore.LuFactorization

    @property
    def n(self) -> int:
        return self.A_k.shape[0]

    def lyapunov_residual(self, X: np.ndarray) -> np.ndarray:
        return self.A_k.conj().T @ X + X @ self.A_k - self.F_k


def shift_step(A_k, F_k, alpha: float) -> LinearizedStep:
    """Factor the shifted operators for a given Lyapunov pair ``(A_k, F_k)``."""
    A_k = matcore.as_matrix(A_k, "A_k", square=True)
    F_k = matcore.as_matrix(F_k, "F_k", square=True)
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    shift = alpha * np.eye(A_k.shape[0])
    left = matcore.lu_factor(shift + A_k.conj().T)
    right = matcore.lu_factor(shift + A_k)
    if left.singular or right.singular:
        raise SingularShift(f"alpha = {alpha:g} makes alpha*I + A_k singular")
    return LinearizedStep(A_k, F_k, float(alpha), left, right)


def linearize(P: CareProblem, X_k, alpha: float) -> LinearizedStep:
    """Build ``A_k = K X_k - A``, ``F_k = X_k K X_k + Q`` and factor the shifts."""
    X_k = matcore.as_matrix(X_k, "X_k", square=True)
    KX = P.K @ X_k
    return shift_step(KX - P.A, X_k @ KX + P.Q, alpha)


def select_alpha(A_k) -> float:
    """Quasi-optimal shift: the largest singular value of ``A_k``.

    This minimizes ``(nu^2 - 2 a alpha + alpha^2) / (nu^2 + 2 a alpha + alpha^2)``
    over ``alpha > 0``, the bound on the ADI contraction factor, where ``nu``
    is that singular value and ``a`` the smallest real part in the spectrum.
    A zero matrix gets ``alpha = 1`` with a warning.
    """
    nu = matcore.norm(A_k, "spectral")
    if nu == 0.0:
        warnings.warn("A_k is the zero matrix; falling back to alpha = 1", RuntimeWarning, stacklevel=2)
        return 1.0
    return nu


def gadi_sweep(
    step: LinearizedStep,
    X_l: np.ndarray,
    params: GadiParams,
    symmetrize: bool = False,
) -> np.ndarray:
    """Apply one GADI sweep to ``X_l`` and return the next inner iterate."""
    if params.alpha != step.alpha:
        raise ValueError(f"step was factored for alpha={step.alpha}, got {params.alpha}")
    alpha, omega = params.alpha, params.omega
    A_k = step.A_k
    XA = X_l @ A_k
    half = matcore.solve(step.left_factor, alpha * X_l - XA + step.F_k, side="left")
    rhs = XA - (1.0 - omega) * alpha * X_l + (2.0 - omega) * alpha * half
    X_next = matcore.solve(step.right_factor, rhs, side="right")
    if symmetrize:
        X_next = matcore.hermitian_project(X_next)
    return X_next


@dataclass(frozen=True)
class StopRule:
    """Inner stopping rule.

    ``kind="care"``: Frobenius CARE residual of the inner iterate below ``tol``.
    ``kind="inexact"``: Frobenius Lyapunov residual at most ``tol`` (the
    driver passes ``eta_k`` times the CARE residual at ``X_k``).
    ``kind="lyapunov"``: Frobenius Lyapunov residual below ``tol``.
    """

    kind: str
    tol: float
    l_max: int = 1000
    stride: int = 1

    def __post_init__(self):
        if self.kind not in INNER_RULES:
            raise ValueError(f"unknown stop rule {self.kind!r}")


class InnerResult(NamedTuple):
    X: np.ndarray
    count: int
    residual: float
    lyap_residual: float
    cap_hit: bool


def gadi_inner_solve(
    P: CareProblem | None,
    X_k: np.ndarray,
    step: LinearizedStep,
    params: GadiParams,
    stop: StopRule,
    symmetrize: bool = False,
) -> InnerResult:
    """Run GADI sweeps from the warm start ``X_k`` until ``stop`` is met.

    ``residual`` is the quantity the rule tested on exit; ``lyap_residual``
    is always the Frobenius norm of ``A_k* X + X A_k - F_k``. When the rule
    is still unmet after ``stop.l_max`` sweeps the last iterate is returned
    with ``cap_hit=True``.
    """
    if stop.kind == "care" and P is None:
        raise ValueError("the 'care' stop rule needs the CARE problem")
    X = np.array(X_k, dtype=np.complex128, copy=True)
    residual = np.inf
    done = False
    ell = 0
    for ell in range(1, stop.l_max + 1):
        X = gadi_sweep(step, X, params, symmetrize)
        if ell % stop.stride and ell != stop.l_max:
            continue
        if stop.kind == "care":
            residual = care_residual_fro(P, X)
            done = residual < stop.tol
        else:
            residual = float(np.linalg.norm(step.lyapunov_residual(X)))
            done = residual <= stop.tol if stop.kind == "inexact" else residual < stop.tol
        if done:
            break
        if not np.isfinite(residual):
            break
    lyap = residual if stop.kind != "care" else float(np.linalg.norm(step.lyapunov_residual(X)))
    return InnerResult(X, ell, float(residual), float(lyap), not done)
