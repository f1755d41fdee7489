"""Solver parameters and the result record returned by every driver."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from typing import Union

import numpy as np

ETA_FLOOR = 1e-14

#: names accepted for ``SolverConfig.eta``
ETA_SCHEDULES = ("inverse_cubic", "inverse_quartic")
INIT_POLICIES = ("algorithm_step1", "algorithm_step1_negated", "zero")
INNER_RULES = ("care", "inexact", "lyapunov")
TERMINATIONS = ("converged", "outer_cap", "inner_cap_hit", "divergence")


@dataclass(frozen=True)
class GadiParams:
    """Shift ``alpha > 0`` and relaxation ``0 <= omega < 2`` of one GADI sweep."""

    alpha: float
    omega: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and self.alpha > 0):
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not (0.0 <= self.omega < 2.0):
            raise ValueError(f"omega must lie in [0, 2), got {self.omega}")


EtaSpec = Union[None, str, float]
InitSpec = Union[str, np.ndarray]


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances, caps and policies shared by the Newton drivers.

    Parameters
    ----------
    eps_out, eps_inn
        Outer (normalized residual) and inner stopping tolerances.
    l_max, k_max
        Caps on inner sweeps per Newton step and on Newton steps.
    omega
        GADI relaxation parameter; ``0`` gives Newton-ADI.
    alpha
        ``"auto"`` re-selects the quasi-optimal shift (largest singular
        value of ``A_k``) at every Newton step; a float fixes it.
    eta
        Forcing-term schedule for the inexact driver: ``"inverse_cubic"``
        (``1/(k^3+1)``), ``"inverse_quartic"`` (``1/(k^4+1)``), a constant
        float, or ``None``.
    init
        ``"algorithm_step1"``, ``"algorithm_step1_negated"``, ``"zero"`` or an
        explicit Hermitian starting matrix.
    symmetrize_iterates
        Project every inner iterate onto the Hermitian matrices.
    inner_check_stride
        Evaluate the inner stopping rule every this many sweeps.
    inner_rule
        Override the driver's inner stopping rule (``"care"``, ``"inexact"``
        or ``"lyapunov"``); ``None`` keeps the driver's own rule.
    divergence_factor
        Abort once NRes exceeds its running minimum by this factor.
    """

    eps_out: float = 1e-8
    eps_inn: float = 1e-8
    l_max: int = 1000
    k_max: int = 1000
    omega: float = 1.0
    alpha: Union[str, float] = "auto"
    eta: EtaSpec = None
    init: InitSpec = "algorithm_step1"
    symmetrize_iterates: bool = False
    inner_check_stride: int = 1
    inner_rule: Union[str, None] = None
    divergence_factor: float = 1e6

    def __post_init__(self):
        if self.eps_out <= 0 or self.eps_inn <= 0:
            raise ValueError("tolerances must be positive")
        if self.l_max < 1 or self.k_max < 1 or self.inner_check_stride < 1:
            raise ValueError("iteration caps and the check stride must be >= 1")
        if not (0.0 <= self.omega < 2.0):
            raise ValueError(f"omega must lie in [0, 2), got {self.omega}")
        if isinstance(self.alpha, str):
            if self.alpha != "auto":
                raise ValueError(f"alpha must be 'auto' or a positive float, got {self.alpha!r}")
        elif not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if isinstance(self.eta, str) and self.eta not in ETA_SCHEDULES:
            raise ValueError(f"unknown eta schedule {self.eta!r}")
        if isinstance(self.eta, (int, float)) and not self.eta > 0:
            raise ValueError("a constant eta must be positive")
        if isinstance(self.init, str) and self.init not in INIT_POLICIES:
            raise ValueError(f"unknown init policy {self.init!r}")
        if self.inner_rule is not None and self.inner_rule not in INNER_RULES:
            raise ValueError(f"unknown inner rule {self.inner_rule!r}")

    def eta_at(self, k: int) -> float:
        """Forcing term for Newton step ``k`` (0-based), floored at 1e-14."""
        if self.eta is None:
            raise ValueError("no eta schedule configured")
        if self.eta == "inverse_cubic":
            eta = 1.0 / (k**3 + 1)
        elif self.eta == "inverse_quartic":
            eta = 1.0 / (k**4 + 1)
        else:
            eta = float(self.eta)
        return max(eta, ETA_FLOOR)

    def replace(self, **changes) -> "SolverConfig":
        return replace(self, **changes)


@dataclass
class SolveReport:
    """Outcome of one Newton-type solve.

    ``inner_counts[k]`` is the number of inner sweeps of Newton step ``k``;
    ``it_cumul == sum(inner_counts)`` and ``it_ave == it_cumul / it_out``.
    """

    method: str
    solution: np.ndarray
    nres_history: list[float]
    inner_counts: list[int]
    alpha_history: list[float]
    lyap_residuals: list[float]
    termination: str
    wall_time: float
    hermitian_defect_final: float
    inner_cap_hits: int = 0
    eta_history: list[float] = field(default_factory=list)
    monotone_defects: list[float] = field(default_factory=list)
    omega: float = float("nan")

    @property
    def it_out(self) -> int:
        return len(self.nres_history)

    @property
    def it_cumul(self) -> int:
        return int(sum(self.inner_counts))

    @property
    def it_ave(self) -> float:
        return self.it_cumul / self.it_out if self.it_out else 0.0

    @property
    def final_nres(self) -> float:
        return self.nres_history[-1] if self.nres_history else float("nan")

    @property
    def converged(self) -> bool:
        return self.termination == "converged"

    def to_dict(self) -> dict:
        d = asdict(self)
        X = d.pop("solution")
        d["solution"] = [[[float(z.real), float(z.imag)] for z in row] for row in X]
        d.update(
            it_out=self.it_out,
            it_cumul=self.it_cumul,
            it_ave=self.it_ave,
            final_nres=self.final_nres,
        )
        return d
