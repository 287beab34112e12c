"""Analytic and reduced-model routes to the survival probability.

None of these allocate ancilla qubits; they exist to cross-check the full
statevector simulation of the Zeno circuits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .linalg import u3_matrix
from .statevector import QubitDensity

RABI_PHI = -math.pi / 2
RABI_LAMBDA = math.pi / 2


@dataclass(frozen=True)
class ZenoParams:
    """Total rotation ``theta_total`` (= 2 Omega t) split into ``n`` monitored slices."""

    theta_total: float
    n: int

    def __post_init__(self):
        check_theta(self.theta_total)
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise InvalidParameterError(f"n must be a positive integer, got {self.n!r}")

    @property
    def slice_angle(self) -> float:
        return self.theta_total / self.n


def check_theta(theta: float) -> float:
    if not isinstance(theta, (int, float)) or not math.isfinite(theta) or not 0.0 <= theta <= math.pi:
        raise InvalidParameterError(f"theta must lie in [0, pi], got {theta!r}")
    return float(theta)


def survival_closed_form(params: ZenoParams) -> float:
    """``(1 + cos^n(theta/n)) / 2``.

    Each monitored slice keeps q0 in place with probability ``cos^2(theta/2n)``
    and flips it otherwise; survival is the chance of an even number of flips.
    """
    return 0.5 * (1.0 + math.cos(params.slice_angle) ** params.n)


def survival_via_channel(params: ZenoParams) -> float:
    """Iterate rotate-then-dephase on a single-qubit density matrix."""
    u = u3_matrix(params.slice_angle, RABI_PHI, RABI_LAMBDA)
    ud = u.conj().T
    rho = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    for _ in range(params.n):
        rho = u @ rho @ ud
        rho = np.diag(np.diag(rho))
    return QubitDensity(rho).p0


def taylor_survival_single(omega: float, t: float) -> float:
    """Short-time approximation ``1 - (Omega t)^2``."""
    _finite(omega, t)
    return 1.0 - (omega * t) ** 2


def taylor_survival_n(omega: float, t: float, n: int) -> float:
    """Linearised n-interval approximation ``1 - (Omega t)^2 / n``."""
    _finite(omega, t)
    _positive(n)
    return 1.0 - (omega * t) ** 2 / n


def taylor_survival_product(omega: float, t: float, n: int) -> float:
    """Product form ``(1 - (Omega t / n)^2)^n`` before linearisation."""
    _finite(omega, t)
    _positive(n)
    return (1.0 - (omega * t / n) ** 2) ** n


def _finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise InvalidParameterError(f"expected a finite value, got {v!r}")


def _positive(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidParameterError(f"n must be a positive integer, got {n!r}")
