"""Circuit families for the Zeno experiment and the survival-curve sweep."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .errors import CapacityError, InvalidParameterError, InvariantViolation
from .linalg import max_abs, u3_matrix
from .oracles import RABI_LAMBDA, RABI_PHI, ZenoParams, check_theta, survival_closed_form, survival_via_channel
from .statevector import (
    MAX_QUBITS,
    Circuit,
    CnotApply,
    U3Apply,
    prob_qubit0,
    reduced_density_q0,
    run_circuit,
    sample_shots,
    trace_states,
)

MAX_SWEEP_N = 20
DEFAULT_SHOTS = 8192
BACKENDS = ("statevector", "channel", "closed_form")
AGREEMENT_ATOL = 1e-12

# Total rotations of the five standard survival series, in series order.
SERIES_THETAS = (math.pi / 2, math.pi / 3, math.pi / 4, math.pi / 5, math.pi / 6)


def _rabi_gate(target: int, theta: float) -> U3Apply:
    return U3Apply(target, theta, RABI_PHI, RABI_LAMBDA)


def build_rabi_circuit(theta: float) -> Circuit:
    """One ``U3(theta, -pi/2, pi/2)`` on q0, then read q0."""
    check_theta(theta)
    return Circuit(1, (_rabi_gate(0, theta),))


def build_qze_circuit(theta_total: float, n: int) -> Circuit:
    """``n`` rotation slices on q0, each followed by a CNOT into a fresh ancilla."""
    params = ZenoParams(theta_total, n)
    if n + 1 > MAX_QUBITS or n > MAX_SWEEP_N:
        raise CapacityError(f"n={n} needs {n + 1} qubits; statevector circuits allow n <= {MAX_SWEEP_N}")
    ops = []
    for k in range(1, n + 1):
        ops.append(_rabi_gate(0, params.slice_angle))
        ops.append(CnotApply(0, k))
    return Circuit(n + 1, tuple(ops))


def build_sliced_rotation_circuit(theta_total: float, n_slices: int) -> Circuit:
    """``n_slices`` consecutive rotation slices on q0 with no ancillas."""
    params = ZenoParams(theta_total, n_slices)
    return Circuit(1, tuple(_rabi_gate(0, params.slice_angle) for _ in range(n_slices)))


def survival_statevector(circuit: Circuit) -> float:
    return prob_qubit0(run_circuit(circuit), 0)


def cnot_coherences(circuit: Circuit) -> list[float]:
    """``|rho_01|`` of q0 right after every CNOT in ``circuit``."""
    out = []
    for op, state in zip(circuit.ops, trace_states(circuit)):
        if isinstance(op, CnotApply):
            out.append(reduced_density_q0(state).coherence)
    return out


@dataclass(frozen=True)
class DecompositionReport:
    theta_total: float
    n_slices: int
    p_single: float
    p_sliced: float
    max_entrywise_gate_gap: float

    @property
    def probability_gap(self) -> float:
        return abs(self.p_single - self.p_sliced)


def verify_decomposition(theta_total: float, n_slices: int) -> DecompositionReport:
    """Compare one rotation against ``n_slices`` equal slices, as matrices and as survival."""
    params = ZenoParams(theta_total, n_slices)
    single = u3_matrix(theta_total, RABI_PHI, RABI_LAMBDA)
    slice_m = u3_matrix(params.slice_angle, RABI_PHI, RABI_LAMBDA)
    product = slice_m
    for _ in range(n_slices - 1):
        product = slice_m @ product
    return DecompositionReport(
        theta_total=theta_total,
        n_slices=n_slices,
        p_single=survival_statevector(build_rabi_circuit(theta_total)),
        p_sliced=survival_statevector(build_sliced_rotation_circuit(theta_total, n_slices)),
        max_entrywise_gate_gap=max_abs(product - single),
    )


@dataclass(frozen=True)
class SweepConfig:
    theta_total: float
    n_min: int = 1
    n_max: int = 14
    shots: int = DEFAULT_SHOTS
    seed: int = 0
    backends: tuple[str, ...] = BACKENDS
    workers: int = 1

    def __post_init__(self):
        check_theta(self.theta_total)
        if not 1 <= self.n_min <= self.n_max <= MAX_SWEEP_N:
            raise InvalidParameterError(
                f"need 1 <= n_min <= n_max <= {MAX_SWEEP_N}, got {self.n_min}..{self.n_max}"
            )
        if self.shots < 1:
            raise InvalidParameterError(f"shots must be >= 1, got {self.shots}")
        backends = tuple(b for b in BACKENDS if b in set(self.backends))
        unknown = set(self.backends) - set(BACKENDS)
        if unknown or not backends:
            raise InvalidParameterError(f"backends must be a non-empty subset of {BACKENDS}, got {self.backends}")
        object.__setattr__(self, "backends", backends)
        if self.workers < 1:
            raise InvalidParameterError("workers must be >= 1")


@dataclass(frozen=True)
class SurvivalPoint:
    n: int
    p_exact: Optional[float]
    p_channel: Optional[float]
    p_closed: Optional[float]
    counts0: int
    counts1: int
    shots: int
    seed: int

    @property
    def p_reference(self) -> float:
        """Best available exact value: statevector, then channel, then closed form."""
        for p in (self.p_exact, self.p_channel, self.p_closed):
            if p is not None:
                return p
        raise InvariantViolation("survival point carries no probability")


@dataclass(frozen=True)
class SurvivalCurve:
    theta_total: float
    points: tuple[SurvivalPoint, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        ns = [p.n for p in self.points]
        if ns != sorted(ns):
            raise InvariantViolation("survival points must be sorted by n")

    @property
    def ns(self) -> list[int]:
        return [p.n for p in self.points]

    def series(self, name: str = "p_reference") -> list[float]:
        return [getattr(p, name) for p in self.points]


def point_seed(seed: int, n: int) -> int:
    return seed ^ n


def _sweep_point(config: SweepConfig, n: int) -> SurvivalPoint:
    params = ZenoParams(config.theta_total, n)
    p_exact = p_channel = p_closed = None
    if "statevector" in config.backends:
        p_exact = survival_statevector(build_qze_circuit(config.theta_total, n))
    if "channel" in config.backends:
        p_channel = survival_via_channel(params)
    if "closed_form" in config.backends:
        p_closed = survival_closed_form(params)

    values = [p for p in (p_exact, p_channel, p_closed) if p is not None]
    if max(values) - min(values) > AGREEMENT_ATOL:
        raise InvariantViolation(
            f"backends disagree at theta={config.theta_total!r}, n={n}: {values}"
        )
    p_ref = next(iter(values))
    # clip rounding excursions like 1.0000000000000002 before sampling
    p_ref = min(max(p_ref, 0.0), 1.0)
    seed = point_seed(config.seed, n)
    hist = sample_shots(p_ref, config.shots, seed)
    return SurvivalPoint(n, p_exact, p_channel, p_closed, hist.counts0, hist.counts1, hist.shots, seed)


def run_sweep(config: SweepConfig) -> SurvivalCurve:
    """Survival at every ``n`` in ``[n_min, n_max]`` plus a shot histogram per point.

    Points are independent; with ``workers > 1`` they are computed on a thread
    pool and reassembled in ``n`` order, giving the same result as a serial run.
    """
    ns = range(config.n_min, config.n_max + 1)
    if config.workers == 1:
        points = [_sweep_point(config, n) for n in ns]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            points = list(pool.map(lambda n: _sweep_point(config, n), ns))
    return SurvivalCurve(config.theta_total, tuple(points))


def run_series(n_min: int = 1, n_max: int = 14, shots: int = DEFAULT_SHOTS, seed: int = 0,
                workers: int = 1) -> list[SurvivalCurve]:
    return [
        run_sweep(SweepConfig(theta, n_min, n_max, shots, seed, BACKENDS, workers))
        for theta in SERIES_THETAS
    ]


def rabi_summary(theta: float, shots: int = DEFAULT_SHOTS, seed: int = 0) -> dict:
    """Exact and sampled survival of the single-gate circuit."""
    p = survival_statevector(build_rabi_circuit(theta))
    hist = sample_shots(min(max(p, 0.0), 1.0), shots, seed)
    return {
        "theta": theta,
        "p_exact": p,
        "counts0": hist.counts0,
        "counts1": hist.counts1,
        "shots": hist.shots,
        "seed": seed,
        "p_sampled": hist.frequency0,
    }


__all__ = [
    "BACKENDS",
    "DEFAULT_SHOTS",
    "SERIES_THETAS",
    "DecompositionReport",
    "SurvivalCurve",
    "SurvivalPoint",
    "SweepConfig",
    "build_qze_circuit",
    "build_rabi_circuit",
    "build_sliced_rotation_circuit",
    "cnot_coherences",
    "rabi_summary",
    "run_series",
    "run_sweep",
    "survival_statevector",
    "verify_decomposition",
]
