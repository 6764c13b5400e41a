"""Fermionic excitations are qubit excitations whose angle flips sign on odd parity."""
from qexcite import ExcitationSpec, apply_circuit, build, parity
from qexcite.simulator import basis_state

spec = ExcitationSpec("sf", (0, 4), 0.5)
qubit = spec.with_kind("sq")
print("parity qubits:", spec.parity_qubits())

for b in (0b00001, 0b00011, 0b00111, 0b01011):
    psi = basis_state(b, spec.n_qubits)
    odd = parity(b, spec.parity_qubits())
    out_f = apply_circuit(build(spec), psi)
    out_q = apply_circuit(build(qubit.with_theta(-spec.theta if odd else spec.theta)), psi)
    diff = abs(out_f - out_q).max()
    print(f"|{b:05b}>  parity {odd}  max amplitude difference {diff:.1e}")
