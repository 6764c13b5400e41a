"""Ancilla-free multi-controlled RY: each added control doubles the CNOT count."""
import numpy as np

from qexcite import ControlSpec, build_multi_controlled_ry, resources, unitary_of

theta = 1.1
for m in range(1, 5):
    ctrl = ControlSpec.positive(range(1, m + 1), 0)
    c = build_multi_controlled_ry(theta, ctrl, m + 1)
    u = unitary_of(c)
    # all controls set, target |0> -> cos|0> + sin|1> on the target
    b = (2 ** (m + 1) - 1) ^ 1
    print(f"m={m}: {resources(c).cnot_count:2d} CNOTs, fired column {np.round(u[[b, b | 1], b].real, 6)}")

# Open controls fire on |0>; they are X gates around the same circuit.
ctrl = ControlSpec(((1, True), (2, False)), 0)
u = unitary_of(build_multi_controlled_ry(theta, ctrl, 3))
print("controls q1=1, q2=0 ->", np.round(u[[0b010, 0b011], 0b010].real, 6))
