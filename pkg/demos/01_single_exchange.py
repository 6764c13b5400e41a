"""Single qubit excitation: three CNOTs rotate |10> into |01> and leave |00>, |11> alone."""
import numpy as np

from qexcite import ExcitationSpec, build, emit_qasm, exact_unitary, resources, unitary_of
from qexcite.simulator import equal_up_to_global_phase

theta = 0.6
spec = ExcitationSpec("sq", (0, 1), theta)
circuit = build(spec)
print(emit_qasm(circuit))

rep = resources(circuit)
print(f"CNOT count {rep.cnot_count}, CNOT depth {rep.cnot_depth}")

u = unitary_of(circuit)
ok, dist = equal_up_to_global_phase(u, exact_unitary(spec))
print(f"matches exp(theta (Q1^+ Q0 - h.c.)): {ok} (distance {dist:.1e})")

# column 1 is |q0=1, q1=0>; the amplitude flows to column index 2 as cos/sin
phase = u[0, 0]
print("U|10> =", np.round(u[:, 1] / phase, 6), " expected cos, sin =", np.round([np.cos(theta), np.sin(theta)], 6))
