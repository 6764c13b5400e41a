"""CNOT-efficient circuits for qubit and fermionic excitations, with exact verification."""
from .circuit import (
    Circuit, CircuitError, Gate, GateKind, ResourceReport,
    append, emit_qasm, inverse, parse_qasm, resources,
)
from .pauli import (
    ExcitationKind, ExcitationSpec, PauliError, PauliString, PauliSum,
    exact_unitary, generator, jw_ladder, parity, pauli_mul, qubit_ladder,
)
from .simulator import apply_circuit, equal_up_to_global_phase, unitary_of
from .synthesis import (
    ControlSpec, SynthesisError, build, build_double_fermionic_excitation,
    build_double_qubit_excitation, build_multi_controlled_ry, build_pauli_exponential,
    build_single_fermionic_excitation, build_single_qubit_excitation,
    build_standard_double_fermionic, build_standard_single_fermionic, fuse_cnot_cz,
)

__version__ = "0.1.0"
