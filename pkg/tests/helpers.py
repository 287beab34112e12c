"""Reference implementations kept independent of the package internals."""
import itertools
import math

import numpy as np

MASK64 = (1 << 64) - 1


def path_enumeration_survival(theta_total, n):
    """Sum over all 2^n stay/flip histories of the monitored qubit; survive on an even flip count."""
    stay = math.cos(theta_total / (2 * n)) ** 2
    flip = math.sin(theta_total / (2 * n)) ** 2
    total = 0.0
    for path in itertools.product((0, 1), repeat=n):
        flips = sum(path)
        if flips % 2 == 0:
            total += stay ** (n - flips) * flip ** flips
    return total


def splitmix64_scalar(state, count):
    """Textbook sequential splitmix64 on Python ints."""
    out = []
    state &= MASK64
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        out.append(z ^ (z >> 31))
    return out


def dense_single(num_qubits, target, m):
    """Full matrix of a one-qubit gate; qubit 0 is the rightmost Kronecker factor."""
    full = np.array([[1.0 + 0j]])
    for k in reversed(range(num_qubits)):
        full = np.kron(full, m if k == target else np.eye(2))
    return full


def dense_cnot(num_qubits, control, target):
    dim = 1 << num_qubits
    p = np.zeros((dim, dim), dtype=complex)
    for i in range(dim):
        j = i ^ (1 << target) if (i >> control) & 1 else i
        p[j, i] = 1.0
    return p


def u3_reference(theta, phi, lam):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [[c, -complex(math.cos(lam), math.sin(lam)) * s],
         [complex(math.cos(phi), math.sin(phi)) * s, complex(math.cos(lam + phi), math.sin(lam + phi)) * c]]
    )
