"""Exact statevector simulation of U3/CNOT circuits.

Qubit ``k`` lives in bit ``k`` of the amplitude index, so qubit 0 is the least
significant bit. Human-readable kets (see :func:`ket_label`) print qubit 0
leftmost.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

from . import rng
from .errors import CapacityError, InvalidParameterError, InvariantViolation, QubitIndexError
from .linalg import ATOL, is_hermitian, u3_matrix

MAX_QUBITS = 24
NORM_ATOL = 1e-10


@dataclass(frozen=True)
class U3Apply:
    target: int
    theta: float
    phi: float
    lam: float


@dataclass(frozen=True)
class CnotApply:
    control: int
    target: int


Op = Union[U3Apply, CnotApply]


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list on ``num_qubits`` wires with a terminal readout of q0."""

    num_qubits: int
    ops: tuple[Op, ...] = ()
    measured_qubit: int = 0

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        if not 1 <= self.num_qubits <= MAX_QUBITS:
            raise CapacityError(
                f"circuit needs {self.num_qubits} qubits; supported range is 1..{MAX_QUBITS}"
            )
        _check_index(self.measured_qubit, self.num_qubits)
        for op in self.ops:
            if isinstance(op, U3Apply):
                _check_index(op.target, self.num_qubits)
            elif isinstance(op, CnotApply):
                _check_index(op.control, self.num_qubits)
                _check_index(op.target, self.num_qubits)
                if op.control == op.target:
                    raise QubitIndexError(f"CNOT control and target are both {op.control}")
            else:
                raise TypeError(f"unsupported op {op!r}")

    def count(self, kind: type) -> int:
        return sum(isinstance(op, kind) for op in self.ops)


@dataclass(frozen=True)
class StateVector:
    num_qubits: int
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if amps.shape != (1 << self.num_qubits,):
            raise InvalidParameterError(
                f"expected {1 << self.num_qubits} amplitudes, got shape {amps.shape}"
            )
        if amps.flags.writeable:
            amps = amps.copy()
            amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @property
    def norm_sq(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def amplitude(self, bits: str) -> complex:
        """Amplitude of the basis ket written q0-first, e.g. ``"101"``."""
        if len(bits) != self.num_qubits or set(bits) - {"0", "1"}:
            raise InvalidParameterError(f"bad basis label {bits!r}")
        index = sum(1 << k for k, b in enumerate(bits) if b == "1")
        return complex(self.amps[index])


@dataclass(frozen=True)
class QubitDensity:
    rho: np.ndarray = field(repr=False)

    def __post_init__(self):
        rho = np.array(self.rho, dtype=complex)
        if rho.shape != (2, 2):
            raise InvalidParameterError(f"density matrix must be 2x2, got {rho.shape}")
        if not is_hermitian(rho):
            raise InvariantViolation("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1) > ATOL:
            raise InvariantViolation(f"density matrix trace {np.trace(rho)} != 1")
        if np.linalg.eigvalsh(rho).min() < -ATOL:
            raise InvariantViolation("density matrix has a negative eigenvalue")
        rho.flags.writeable = False
        object.__setattr__(self, "rho", rho)

    @property
    def coherence(self) -> float:
        """Magnitude of the off-diagonal element."""
        return abs(complex(self.rho[0, 1]))

    @property
    def p0(self) -> float:
        return float(self.rho[0, 0].real)


@dataclass(frozen=True)
class ShotHistogram:
    shots: int
    counts0: int
    counts1: int
    seed: int

    @property
    def frequency0(self) -> float:
        return self.counts0 / self.shots


def _check_index(k: int, num_qubits: int) -> None:
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or not 0 <= k < num_qubits:
        raise QubitIndexError(f"qubit index {k!r} out of range for {num_qubits} qubits")


def _checked(num_qubits: int, amps: np.ndarray) -> StateVector:
    norm = float(np.vdot(amps, amps).real)
    if abs(norm - 1.0) > NORM_ATOL:
        raise InvariantViolation(f"state norm drifted to {norm!r}")
    amps.flags.writeable = False
    return StateVector(num_qubits, amps)


def new_zero_state(num_qubits: int) -> StateVector:
    if not isinstance(num_qubits, (int, np.integer)) or not 1 <= num_qubits <= MAX_QUBITS:
        raise CapacityError(f"num_qubits must be in 1..{MAX_QUBITS}, got {num_qubits!r}")
    amps = np.zeros(1 << num_qubits, dtype=complex)
    amps[0] = 1.0
    amps.flags.writeable = False
    return StateVector(num_qubits, amps)


def apply_matrix1(state: StateVector, target: int, m: np.ndarray) -> StateVector:
    """Apply a 2x2 matrix to one qubit.

    Viewing the index as ``(high, bit_target, low)`` every pair of amplitudes
    that differ only in the target bit is mixed by ``m``.
    """
    q = state.num_qubits
    _check_index(target, q)
    low = 1 << target
    v = state.amps.reshape(-1, 2, low)
    a0 = v[:, 0, :]
    a1 = v[:, 1, :]
    out = np.empty_like(v)
    out[:, 0, :] = m[0, 0] * a0 + m[0, 1] * a1
    out[:, 1, :] = m[1, 0] * a0 + m[1, 1] * a1
    return _checked(q, out.reshape(-1))


def apply_u3(state: StateVector, target: int, theta: float, phi: float, lam: float) -> StateVector:
    return apply_matrix1(state, target, u3_matrix(theta, phi, lam))


def apply_cnot(state: StateVector, control: int, target: int) -> StateVector:
    """Flip ``target`` on the half of the basis where ``control`` is 1."""
    q = state.num_qubits
    _check_index(control, q)
    _check_index(target, q)
    if control == target:
        raise QubitIndexError(f"CNOT control and target are both {control}")
    v = state.amps.reshape((2,) * q).copy()
    # numpy axis for qubit k is q-1-k (C order, qubit 0 = last axis)
    hi = [slice(None)] * q
    hi[q - 1 - control] = 1
    lo0 = list(hi)
    lo1 = list(hi)
    lo0[q - 1 - target] = 0
    lo1[q - 1 - target] = 1
    v[tuple(lo0)], v[tuple(lo1)] = v[tuple(lo1)].copy(), v[tuple(lo0)].copy()
    return _checked(q, v.reshape(-1))


def apply_op(state: StateVector, op: Op) -> StateVector:
    if isinstance(op, U3Apply):
        return apply_u3(state, op.target, op.theta, op.phi, op.lam)
    if isinstance(op, CnotApply):
        return apply_cnot(state, op.control, op.target)
    raise TypeError(f"unsupported op {op!r}")


def prob_qubit0(state: StateVector, outcome: int) -> float:
    """Probability of reading ``outcome`` on qubit 0."""
    if outcome not in (0, 1):
        raise InvalidParameterError(f"outcome must be 0 or 1, got {outcome!r}")
    pairs = state.amps.reshape(-1, 2)[:, outcome]
    return float(np.vdot(pairs, pairs).real)


def reduced_density(state: StateVector, qubit: int) -> QubitDensity:
    """Partial trace over every wire except ``qubit``."""
    q = state.num_qubits
    _check_index(qubit, q)
    low = 1 << qubit
    # columns indexed by the kept bit, rows by all other bits
    m = state.amps.reshape(-1, 2, low).transpose(0, 2, 1).reshape(-1, 2)
    return QubitDensity(m.T @ m.conj())


def reduced_density_q0(state: StateVector) -> QubitDensity:
    return reduced_density(state, 0)


def sample_shots(p0: float, shots: int, seed: int) -> ShotHistogram:
    """Draw ``Binomial(shots, p0)`` as ``shots`` uniform draws tested against ``p0``.

    Draw ``i`` is the ``i``-th output of :func:`zeno.rng.uniforms` for
    ``seed``; outcome 0 is recorded when it is strictly below ``p0``.
    """
    if not (isinstance(p0, (int, float)) and math.isfinite(p0) and 0.0 <= p0 <= 1.0):
        raise InvalidParameterError(f"p0 must be a probability in [0, 1], got {p0!r}")
    if not isinstance(shots, (int, np.integer)) or shots < 1:
        raise InvalidParameterError(f"shots must be a positive integer, got {shots!r}")
    counts0 = int(np.count_nonzero(rng.uniforms(seed, shots) < p0))
    return ShotHistogram(shots=int(shots), counts0=counts0, counts1=int(shots) - counts0, seed=seed)


def trace_states(circuit: Circuit) -> list[StateVector]:
    """State after each op, in order."""
    state = new_zero_state(circuit.num_qubits)
    out = []
    for op in circuit.ops:
        state = apply_op(state, op)
        out.append(state)
    return out


def run_circuit(circuit: Circuit) -> StateVector:
    state = new_zero_state(circuit.num_qubits)
    for op in circuit.ops:
        state = apply_op(state, op)
    return state


def basis_state(num_qubits: int, index: int) -> StateVector:
    amps = np.zeros(1 << num_qubits, dtype=complex)
    amps[index] = 1.0
    return StateVector(num_qubits, amps)


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Full ``2^q x 2^q`` unitary of a circuit, built column by column.

    Only meant for small registers in tests and decomposition checks.
    """
    q = circuit.num_qubits
    if q > 12:
        raise CapacityError("circuit_unitary is limited to 12 qubits")
    dim = 1 << q
    u = np.empty((dim, dim), dtype=complex)
    for col in range(dim):
        state = basis_state(q, col)
        for op in circuit.ops:
            state = apply_op(state, op)
        u[:, col] = state.amps
    return u


def product_state(factors: Iterable[np.ndarray]) -> StateVector:
    """Tensor product of single-qubit states, ``factors[k]`` on qubit ``k``."""
    factors = [np.asarray(f, dtype=complex) for f in factors]
    amps = np.array([1.0 + 0j])
    for f in factors:
        amps = np.kron(f, amps)
    return StateVector(len(factors), amps)


def ket_label(index: int, num_qubits: int) -> str:
    """Basis ket for an amplitude index with qubit 0 printed first."""
    return "|" + "".join(str((index >> k) & 1) for k in range(num_qubits)) + "⟩"
