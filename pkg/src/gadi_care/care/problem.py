"""CARE problem container, residuals and best-effort diagnostics."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import matcore
from ..exceptions import DimensionMismatch, NonHermitianData

HERMITIAN_RTOL = 1e-12
PBH_RTOL = 1e-10


def _frozen(M: np.ndarray) -> np.ndarray:
    M = np.array(M, dtype=np.complex128, copy=True)
    M.flags.writeable = False
    return M


@dataclass(frozen=True, eq=False)
class CareProblem:
    """The data ``(A, K, Q)`` of ``A* X + X A - X K X + Q = 0``.

    ``K`` and ``Q`` must be Hermitian up to ``1e-12`` relative Frobenius
    defect. The stored arrays are read-only copies.
    """

    A: np.ndarray
    K: np.ndarray
    Q: np.ndarray
    name: str = ""

    def __post_init__(self):
        A = matcore.as_matrix(self.A, "A", square=True)
        K = matcore.as_matrix(self.K, "K", square=True)
        Q = matcore.as_matrix(self.Q, "Q", square=True)
        if not (A.shape == K.shape == Q.shape):
            raise DimensionMismatch(
                f"A, K, Q must share one size, got {A.shape}, {K.shape}, {Q.shape}"
            )
        for label, M in (("K", K), ("Q", Q)):
            defect = matcore.hermitian_defect(M)
            if defect > HERMITIAN_RTOL * np.linalg.norm(M):
                i, j = hermitian_offender(M)
                raise NonHermitianData(
                    f"{label} is not Hermitian: {label}[{i}][{j}] = {M[i, j]} but "
                    f"conj({label}[{j}][{i}]) = {np.conj(M[j, i])} (defect {defect:.3e})"
                )
        object.__setattr__(self, "A", _frozen(A))
        object.__setattr__(self, "K", _frozen(K))
        object.__setattr__(self, "Q", _frozen(Q))

    @property
    def n(self) -> int:
        return self.A.shape[0]

    def __eq__(self, other):
        if not isinstance(other, CareProblem):
            return NotImplemented
        return (
            np.array_equal(self.A, other.A)
            and np.array_equal(self.K, other.K)
            and np.array_equal(self.Q, other.Q)
        )

    __hash__ = None


def hermitian_offender(M: np.ndarray) -> tuple[int, int]:
    """Index pair ``(i, j)`` with the largest ``|M[i, j] - conj(M[j, i])|``."""
    D = np.abs(M - M.conj().T)
    i, j = np.unravel_index(np.argmax(D), D.shape)
    return int(i), int(j)


def care_residual(P: CareProblem, X) -> tuple[np.ndarray, float]:
    """CARE residual ``R = A* X + X A - X K X + Q`` and its normalized size.

    The normalized residual is ``||R||_2`` divided by
    ``||A* X||_2 + ||X A||_2 + ||X K X||_2 + ||Q||_2`` (spectral norms), and
    is defined as 0 when that denominator vanishes.
    """
    X = matcore.as_matrix(X, "X", square=True)
    if X.shape != P.A.shape:
        raise DimensionMismatch(f"X has shape {X.shape}, problem size is {P.n}")
    AhX = P.A.conj().T @ X
    XA = X @ P.A
    XKX = X @ P.K @ X
    R = AhX + XA - XKX + P.Q
    spec = lambda M: matcore.norm(M, "spectral")
    denom = spec(AhX) + spec(XA) + spec(XKX) + spec(P.Q)
    nres = spec(R) / denom if denom > 0.0 else 0.0
    return R, float(nres)


def care_residual_fro(P: CareProblem, X: np.ndarray) -> float:
    """Frobenius norm of the CARE residual; the cheap check used by inner loops."""
    XK = X @ P.K
    R = P.A.conj().T @ X + X @ P.A - XK @ X + P.Q
    return float(np.linalg.norm(R))


@dataclass
class StabilizabilityHint:
    eigenvalue: complex
    sigma_min: float
    suspicious: bool


@dataclass
class ProblemDiagnostics:
    n: int
    k_defect: float
    q_defect: float
    eigenvalues_A: np.ndarray | None
    stabilizability: list[StabilizabilityHint] = field(default_factory=list)

    @property
    def suspicious(self) -> bool:
        return any(h.suspicious for h in self.stabilizability)


def validate_problem(P: CareProblem) -> ProblemDiagnostics:
    """Report Hermitian defects and a PBH-style stabilizability hint.

    For each eigenvalue ``lam`` of ``A`` with ``Re(lam) >= 0`` the smallest
    singular value of ``[A - lam I, K]`` is reported; a value below
    ``1e-10`` times the block's Frobenius norm means ``(A, K)`` is likely not
    stabilizable. Nothing here aborts a solve. Eigen-data is skipped for
    ``n > 256``.
    """
    diag = ProblemDiagnostics(
        n=P.n,
        k_defect=matcore.hermitian_defect(P.K),
        q_defect=matcore.hermitian_defect(P.Q),
        eigenvalues_A=None,
    )
    if P.n > matcore.EIG_MAX_N:
        return diag
    lam = matcore.eigenvalues(P.A)
    diag.eigenvalues_A = lam
    eye = np.eye(P.n)
    for mu in lam:
        if mu.real < 0.0:
            continue
        block = np.hstack([P.A - mu * eye, P.K])
        smin = float(np.linalg.svd(block, compute_uv=False).min())
        scale = max(np.linalg.norm(block), 1.0)
        diag.stabilizability.append(
            StabilizabilityHint(complex(mu), smin, smin < PBH_RTOL * scale)
        )
    return diag
