"""Explicit GADI iteration matrices on the lifted ``n^2``-dimensional space.

With ``L = I kron A_k*`` and ``R = A_k^T kron I`` one sweep acts on
``x = vec(X)`` as ``x+ = T(alpha, omega) x + G f`` where::

    T(alpha, omega) = (aI + R)^-1 (aI + L)^-1 [a^2 I + L R - (1 - omega) a (L + R)]
    T(alpha)        = (aI + R)^-1 (aI + L)^-1 (aI - L)(aI - R)
    G               = (2 - omega) a (aI + R)^-1 (aI + L)^-1

and ``T(alpha, omega) = ((2 - omega) T(alpha) + omega I) / 2``. Both sides
are built independently here so that identity can be checked numerically.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import matcore
from ..exceptions import SingularShift, TooLarge, UnstableInput
from .kronecker import kron, lyap_direct, vec

#: largest n whose lifted iteration matrix is formed and eigen-analysed
ITER_MAX_N = 16


@dataclass(frozen=True, eq=False)
class IterationMatrixBundle:
    T_alpha: np.ndarray
    T_alpha_omega: np.ndarray
    C_k: np.ndarray
    G: np.ndarray
    eig_T_alpha: np.ndarray
    eig_T_alpha_omega: np.ndarray
    rho_T_alpha: float
    rho_T_alpha_omega: float
    rho_bound: float
    alpha: float
    omega: float


@dataclass(frozen=True)
class SpectralComparison:
    """Dominant eigen-data of ``T(alpha)`` and ``T(alpha, omega)``.

    ``eta = c + i d`` is the dominant eigenvalue of ``T(alpha)`` and ``zeta``
    that of ``T(alpha, omega)``; ``eta_at_zeta`` is the eigenvalue of
    ``T(alpha)`` that ``zeta`` is the image of. ``case`` is
    ``"adi_better"`` when ``|eta|^2 <= c``, ``"gadi_better"`` when
    ``|eta_at_zeta|^2 > Re(eta_at_zeta)`` and ``omega`` lies strictly inside
    ``(0, omega_window_upper)``, ``"neither"`` otherwise. ``consistent``
    records whether the measured radii obey the ordering the case predicts.
    """

    eta: complex
    zeta: complex
    eta_at_zeta: complex
    case: str
    omega_window_upper: float
    rho_T_alpha: float
    rho_T_alpha_omega: float
    consistent: bool


def _lifted_parts(A_k, alpha: float):
    A_k = matcore.as_matrix(A_k, "A_k", square=True)
    n = A_k.shape[0]
    if n > ITER_MAX_N:
        raise TooLarge(f"iteration matrices are limited to n <= {ITER_MAX_N}, got n = {n}")
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    eye = np.eye(n)
    L = kron(eye, A_k.conj().T)
    R = kron(A_k.T, eye)
    I = np.eye(n * n)
    plus_L = matcore.lu_factor(alpha * I + L)
    plus_R = matcore.lu_factor(alpha * I + R)
    if plus_L.singular or plus_R.singular:
        raise SingularShift(f"alpha = {alpha:g} collides with -spectrum(A_k)")
    return L, R, I, plus_L, plus_R


def _two_sided_inverse(plus_R, plus_L, M):
    # (aI + R)^-1 (aI + L)^-1 M
    return matcore.solve(plus_R, matcore.solve(plus_L, M))


def build_iteration_matrix(A_k, alpha: float, omega: float) -> IterationMatrixBundle:
    if not (0.0 <= omega < 2.0):
        raise ValueError(f"omega must lie in [0, 2), got {omega}")
    L, R, I, plus_L, plus_R = _lifted_parts(A_k, alpha)
    C = L + R
    T_a = _two_sided_inverse(plus_R, plus_L, (alpha * I - L) @ (alpha * I - R))
    inner = alpha**2 * I + L @ R - (1.0 - omega) * alpha * C
    T_aw = _two_sided_inverse(plus_R, plus_L, inner)
    G = (2.0 - omega) * alpha * _two_sided_inverse(plus_R, plus_L, I)

    A_L = matcore.solve(plus_L, alpha * I - L)
    A_R = matcore.solve(plus_R, alpha * I - R, side="right")
    bound = float(np.linalg.norm(A_L, 2) * np.linalg.norm(A_R, 2))

    eig_a = matcore.eigenvalues(T_a)
    eig_aw = matcore.eigenvalues(T_aw)
    return IterationMatrixBundle(
        T_alpha=T_a,
        T_alpha_omega=T_aw,
        C_k=C,
        G=G,
        eig_T_alpha=eig_a,
        eig_T_alpha_omega=eig_aw,
        rho_T_alpha=float(np.abs(eig_a).max()),
        rho_T_alpha_omega=float(np.abs(eig_aw).max()),
        rho_bound=bound,
        alpha=float(alpha),
        omega=float(omega),
    )


def fixed_point_check(A_k, F_k, alpha: float, omega: float) -> float:
    """``||T x* + G f - x*||_2`` with ``x*`` the direct Lyapunov solution."""
    bundle = build_iteration_matrix(A_k, alpha, omega)
    x_star = vec(lyap_direct(A_k, F_k))
    f = vec(F_k)
    return float(np.linalg.norm(bundle.T_alpha_omega @ x_star + bundle.G @ f - x_star))


def _is_dominant(values: np.ndarray, rtol: float = 1e-12) -> np.ndarray:
    mods = np.abs(values)
    return mods >= mods.max() * (1.0 - rtol) - rtol


def compare_adi_gadi(A_k, alpha: float, omega: float) -> SpectralComparison:
    """Classify whether ADI (``omega = 0``) or GADI contracts faster.

    Raises
    ------
    UnstableInput
        If some eigenvalue of ``A_k`` has nonpositive real part.
    """
    lam = matcore.eigenvalues(A_k)
    if lam.real.min() <= 0.0:
        raise UnstableInput(f"A_k must have spectrum in Re > 0, min real part {lam.real.min():.3e}")
    bundle = build_iteration_matrix(A_k, alpha, omega)
    etas = bundle.eig_T_alpha
    # eigenvalues of T(alpha, omega) paired with their preimages in T(alpha)
    zetas = ((2.0 - omega) * etas + omega) / 2.0

    dom_eta = etas[_is_dominant(etas)]
    dom_zeta_idx = np.flatnonzero(_is_dominant(zetas))
    eta = complex(dom_eta[0])
    j1 = int(dom_zeta_idx[0])
    zeta, eta_j1 = complex(zetas[j1]), complex(etas[j1])

    def window(e: complex) -> float:
        gap = abs(e) ** 2 - e.real
        if gap <= 0.0:
            return float("nan")
        return 4.0 * gap / ((1.0 - e.real) ** 2 + e.imag**2)

    # any tied dominant eigenvalue satisfying a condition is enough
    case_i = any(abs(e) ** 2 <= e.real for e in dom_eta)
    upper = window(eta_j1)
    case_ii = False
    for idx in dom_zeta_idx:
        w = window(complex(etas[idx]))
        if np.isfinite(w) and 0.0 < omega < w:
            case_ii, eta_j1, zeta, upper = True, complex(etas[idx]), complex(zetas[idx]), w
            break

    rho_a, rho_aw = bundle.rho_T_alpha, bundle.rho_T_alpha_omega
    slack = 1e-10
    if case_i:
        case = "adi_better"
        consistent = rho_a <= rho_aw + slack and rho_aw < 1.0
    elif case_ii:
        case = "gadi_better"
        consistent = rho_aw < rho_a + slack and rho_a < 1.0
    else:
        case = "neither"
        consistent = rho_a < 1.0 and rho_aw < 1.0
    return SpectralComparison(
        eta=eta,
        zeta=zeta,
        eta_at_zeta=eta_j1,
        case=case,
        omega_window_upper=upper,
        rho_T_alpha=rho_a,
        rho_T_alpha_omega=rho_aw,
        consistent=bool(consistent),
    )


def psi(alpha: float, nu: float, a_mu: float) -> float:
    """Contraction bound ``(nu^2 - 2 a alpha + alpha^2) / (nu^2 + 2 a alpha + alpha^2)``."""
    return (nu**2 - 2 * alpha * a_mu + alpha**2) / (nu**2 + 2 * alpha * a_mu + alpha**2)
