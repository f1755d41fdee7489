"""Brute-force verification: Kronecker lifting, direct Lyapunov solves,
explicit GADI iteration matrices and the exact-Newton reference solver."""
from .iteration import (
    IterationMatrixBundle,
    SpectralComparison,
    build_iteration_matrix,
    compare_adi_gadi,
    fixed_point_check,
    psi,
)
from .kronecker import kron, lyap_direct, lyapunov_operator, unvec, vec
from .newton_exact import newton_exact_solve

__all__ = [
    "IterationMatrixBundle",
    "SpectralComparison",
    "build_iteration_matrix",
    "compare_adi_gadi",
    "fixed_point_check",
    "kron",
    "lyap_direct",
    "lyapunov_operator",
    "newton_exact_solve",
    "psi",
    "unvec",
    "vec",
]
