"""Kronecker lifting: ``vec`` stacks columns, so ``vec(B X A) = (A^T kron B) vec(X)``."""
from __future__ import annotations

import numpy as np

from .. import matcore
from ..exceptions import DimensionMismatch, SingularLift, TooLarge

#: largest lifted dimension the oracle will build
MAX_LIFTED = 4096
#: largest n for which the n^2 x n^2 Lyapunov operator is formed
LYAP_MAX_N = 64


def kron(A, B) -> np.ndarray:
    A = matcore.as_matrix(A, "A")
    B = matcore.as_matrix(B, "B")
    if A.shape[0] * B.shape[0] > MAX_LIFTED or A.shape[1] * B.shape[1] > MAX_LIFTED:
        raise TooLarge(
            f"Kronecker product of {A.shape} and {B.shape} exceeds the lifted limit {MAX_LIFTED}"
        )
    return np.kron(A, B)


def vec(X) -> np.ndarray:
    """Stack the columns of ``X`` into one vector."""
    X = matcore.as_matrix(X, "X")
    return X.reshape(-1, order="F")


def unvec(x, rows: int, cols: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    if x.size != rows * cols:
        raise DimensionMismatch(f"cannot reshape {x.size} entries into {rows}x{cols}")
    return x.reshape((rows, cols), order="F")


def lyapunov_operator(M) -> np.ndarray:
    """``I kron M* + M^T kron I``, the lifted form of ``X -> M* X + X M``."""
    M = matcore.as_matrix(M, "M", square=True)
    n = M.shape[0]
    eye = np.eye(n)
    return kron(eye, M.conj().T) + kron(M.T, eye)


def lyap_direct(M, F) -> np.ndarray:
    """Solve ``M* X + X M = F`` through the dense ``n^2 x n^2`` lifted system."""
    M = matcore.as_matrix(M, "M", square=True)
    F = matcore.as_matrix(F, "F", square=True)
    n = M.shape[0]
    if F.shape != M.shape:
        raise DimensionMismatch(f"F has shape {F.shape}, expected {M.shape}")
    if n > LYAP_MAX_N:
        raise TooLarge(f"lyap_direct is limited to n <= {LYAP_MAX_N}, got n = {n}")
    C = lyapunov_operator(M)
    fac = matcore.lu_factor(C)
    if fac.singular:
        raise SingularLift("M* X + X M = F has no unique solution (lambda_i(M*) + lambda_j(M) = 0)")
    x = matcore.solve(fac, vec(F).reshape(-1, 1))
    return unvec(x, n, n)
