"""Random instance generators shared by the test modules."""
import numpy as np


def random_complex(rng, n, m=None, scale=1.0):
    m = n if m is None else m
    return scale * (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m)))


def random_stable(rng, n, margin=0.5):
    """Complex matrix whose spectrum lies in Re > ``margin``."""
    M = random_complex(rng, n)
    shift = margin - np.linalg.eigvals(M).real.min()
    return M + max(shift, 0.0) * np.eye(n)


def random_hermitian(rng, n):
    M = random_complex(rng, n)
    return (M + M.conj().T) / 2


def random_psd(rng, n, rank=None):
    rank = n if rank is None else rank
    B = random_complex(rng, n, rank)
    return B @ B.conj().T


def classical_adi_sweep(A, F, X, alpha):
    """Textbook two-step ADI for ``A* X + X A = F`` written independently of
    the package: shift the right, solve left, then shift the left, solve right."""
    n = A.shape[0]
    I = np.eye(n)
    Ah = A.conj().T
    X_half = np.linalg.solve(alpha * I + Ah, F - X @ (A - alpha * I))
    rhs = F - (Ah - alpha * I) @ X_half
    return np.linalg.solve((alpha * I + A).T, rhs.T).T
