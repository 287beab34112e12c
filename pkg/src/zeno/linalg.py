"""Small dense complex matrices for the two-level problem.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; scalars are
Python ``complex``. Everything returned here is a fresh array marked
read-only so it can be shared freely.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import InvalidParameterError

ATOL = 1e-12

_I2 = np.eye(2, dtype=complex)
_I2.flags.writeable = False


def _frozen(m: np.ndarray) -> np.ndarray:
    m.flags.writeable = False
    return m


def _check_finite(**values: float) -> None:
    for name, v in values.items():
        if not math.isfinite(v):
            raise InvalidParameterError(f"{name} must be finite, got {v!r}")


def max_abs(a: np.ndarray) -> float:
    """Entrywise max-norm ``max |a_ij|``."""
    return float(np.max(np.abs(a))) if a.size else 0.0


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def is_unitary(u: np.ndarray, atol: float = ATOL) -> bool:
    u = np.asarray(u)
    return max_abs(dagger(u) @ u - np.eye(u.shape[0])) <= atol


def is_hermitian(a: np.ndarray, atol: float = ATOL) -> bool:
    a = np.asarray(a)
    return max_abs(a - dagger(a)) <= atol


def is_power_of_two_dim(a: np.ndarray) -> bool:
    """True for square ``2^k x 2^k`` matrices with ``k >= 1``."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    d = a.shape[0]
    return d >= 2 and d & (d - 1) == 0


def hamiltonian_matrix(omega: float) -> np.ndarray:
    """Rabi drive ``Omega (|0><1| + |1><0|)`` as a 2x2 matrix."""
    _check_finite(omega=omega)
    return _frozen(np.array([[0.0, omega], [omega, 0.0]], dtype=complex))


def evolution_operator(omega: float, t: float) -> np.ndarray:
    """Closed form of ``exp(-i H t)`` for the Rabi Hamiltonian."""
    _check_finite(omega=omega, t=t)
    c = math.cos(omega * t)
    s = math.sin(omega * t)
    return _frozen(np.array([[c, -1j * s], [-1j * s, c]], dtype=complex))


def exponentiate_hamiltonian(h: np.ndarray, t: float) -> np.ndarray:
    """``exp(-i h t)`` for a 2x2 Hermitian ``h`` via its spectral projectors.

    Writing ``h = m I + r (n . sigma)`` with unit vector ``n``, the eigenvalues
    are ``m +/- r`` and the projectors are ``(I +/- n . sigma) / 2``. For
    ``r == 0`` the matrix is a multiple of the identity.
    """
    h = np.asarray(h, dtype=complex)
    if h.shape != (2, 2):
        raise InvalidParameterError(f"expected a 2x2 matrix, got shape {h.shape}")
    if not np.all(np.isfinite(h)):
        raise InvalidParameterError("matrix entries must be finite")
    if not is_hermitian(h):
        raise InvalidParameterError("matrix is not Hermitian within 1e-12")
    _check_finite(t=t)

    a = h[0, 0].real
    d = h[1, 1].real
    b = h[0, 1]
    mean = 0.5 * (a + d)
    # Pauli components: h - mean*I = x X + y Y + z Z
    x, y, z = b.real, -b.imag, 0.5 * (a - d)
    r = math.sqrt(x * x + y * y + z * z)

    if r == 0.0:
        return _frozen(np.exp(-1j * mean * t) * _I2)

    n_sigma = np.array([[z, x - 1j * y], [x + 1j * y, -z]], dtype=complex) / r
    p_plus = 0.5 * (_I2 + n_sigma)
    p_minus = 0.5 * (_I2 - n_sigma)
    u = np.exp(-1j * (mean + r) * t) * p_plus + np.exp(-1j * (mean - r) * t) * p_minus
    return _frozen(u)


def u3_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    """The generic single-qubit gate ``U3(theta, phi, lambda)``."""
    _check_finite(theta=theta, phi=phi, lam=lam)
    c = math.cos(theta / 2)
    s = math.sin(theta / 2)
    return _frozen(
        np.array(
            [
                [c, -np.exp(1j * lam) * s],
                [np.exp(1j * phi) * s, np.exp(1j * (lam + phi)) * c],
            ],
            dtype=complex,
        )
    )

