"""Exact simulation of the two-level quantum Zeno experiment built from U3 and CNOT gates."""
from .errors import (
    AngleParseError,
    CapacityError,
    InvalidParameterError,
    InvariantViolation,
    QubitIndexError,
    UsageError,
    ZenoError,
)
from .experiments import (
    DecompositionReport,
    SurvivalCurve,
    SurvivalPoint,
    SweepConfig,
    build_qze_circuit,
    build_rabi_circuit,
    build_sliced_rotation_circuit,
    run_sweep,
    verify_decomposition,
)
from .linalg import evolution_operator, exponentiate_hamiltonian, hamiltonian_matrix, u3_matrix
from .oracles import (
    ZenoParams,
    survival_closed_form,
    survival_via_channel,
    taylor_survival_n,
    taylor_survival_product,
    taylor_survival_single,
)
from .serialize import emit_csv, emit_json, emit_qasm, emit_svg, parse_angle, print_trace
from .statevector import (
    Circuit,
    CnotApply,
    QubitDensity,
    ShotHistogram,
    StateVector,
    U3Apply,
    apply_cnot,
    apply_u3,
    new_zero_state,
    prob_qubit0,
    reduced_density_q0,
    run_circuit,
    sample_shots,
    trace_states,
)

__version__ = "0.1.0"
