"""
Circuit builders for qubit and fermionic excitations.

Contains:
    - build_pauli_exponential(): CNOT-staircase exponential of one Pauli string
    - build_multi_controlled_ry(): ancilla-free recursive controlled RY
    - fuse_cnot_cz(): replace CNOT-then-CZ on one pair with a single CNOT
    - build_single_qubit_excitation(), build_double_qubit_excitation()
    - build_single_fermionic_excitation(), build_double_fermionic_excitation()
    - build_standard_single_fermionic(), build_standard_double_fermionic()
    - build(): dispatch on ExcitationSpec kind and method
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .circuit import Circuit, Gate, GateKind, cnot, cz, h, rx, ry, rz, x
from .pauli import ExcitationKind, ExcitationSpec, PauliString, generator

HALF_PI = math.pi / 2

# Reference drawings of these circuits write angles with Ry(t) = exp(-i t Y);
# this package uses exp(-i t Y / 2). Each entry maps a drawn angle "f * theta"
# to the angle actually emitted, "CALIBRATION[name] * theta". The values are
# re-derived against the exact unitaries by calibrate() in the test suite.
CALIBRATION = {
    "single_exchange_ry": -1.0,   # drawn as theta/2, Ry pair on q_k
    "double_core_ry": -0.25,      # drawn as theta/8, eight Ry on q_l
}


class SynthesisError(ValueError):
    pass


@dataclass(frozen=True)
class ControlSpec:
    """Controls for a multi-controlled RY.

    ``controls`` is a sequence of ``(qubit, positive)`` pairs; a negative
    control fires on |0>.
    """

    controls: tuple[tuple[int, bool], ...]
    target: int

    def __post_init__(self):
        ctrls = tuple((int(q), bool(p)) for q, p in self.controls)
        object.__setattr__(self, "controls", ctrls)
        qubits = [q for q, _ in ctrls] + [self.target]
        if len(set(qubits)) != len(qubits):
            raise SynthesisError(f"control/target qubits must be distinct: {qubits}")
        if any(q < 0 for q in qubits):
            raise SynthesisError("negative qubit index")

    @classmethod
    def positive(cls, controls: Sequence[int], target: int) -> ControlSpec:
        return cls(tuple((q, True) for q in controls), target)

    @property
    def m(self) -> int:
        return len(self.controls)


def _fits(gates: Sequence[Gate], n: int) -> Circuit:
    try:
        return Circuit(n, tuple(gates))
    except ValueError as exc:
        raise SynthesisError(str(exc)) from exc


# --------------------------------------------------------------------------
# Pauli exponentials

def _basis_change(letter: str, q: int) -> tuple[list[Gate], list[Gate]]:
    if letter == "X":
        return [h(q)], [h(q)]
    if letter == "Y":
        # RX(pi/2)^dagger Z RX(pi/2) = Y
        return [rx(HALF_PI, q)], [rx(-HALF_PI, q)]
    return [], []


def build_pauli_exponential(p: PauliString, theta: float, n: int | None = None) -> Circuit:
    """Circuit for ``exp(-i (theta/2) s P)`` where ``p = s * P`` with ``s = +-1``.

    Basis changes map every X/Y letter to Z, a descending CNOT staircase
    collects the parity onto the lowest qubit of the support, RZ(s*theta)
    acts there, and everything is mirrored.
    """
    n = p.n_qubits if n is None else n
    if n < p.n_qubits:
        raise SynthesisError(f"Pauli string on {p.n_qubits} qubits does not fit {n}")
    sign = p.coefficient
    if abs(abs(sign) - 1) > 1e-12 or abs(sign.imag) > 1e-12:
        raise SynthesisError(f"coefficient must be +1 or -1, got {sign}")
    support = sorted(p.support, reverse=True)
    if not support:
        raise SynthesisError("all-identity Pauli string has no staircase")
    pre, post = [], []
    for q in support:
        a, b = _basis_change(p.letters[q], q)
        pre += a
        post += b
    ladder = [cnot(a, b) for a, b in zip(support, support[1:])]
    gates = pre + ladder + [rz(sign.real * theta, support[-1])] + ladder[::-1] + post
    return _fits(gates, n)


# --------------------------------------------------------------------------
# Multi-controlled RY

def _entangler(kind: str) -> Callable[[int, int], Gate]:
    if kind == "cx":
        return cnot
    if kind == "cz":
        return cz
    raise SynthesisError(f"unknown entangler {kind!r}")


def _mcry_gates(theta: float, controls: Sequence[int], target: int, ent, first_form: bool) -> list[Gate]:
    # first_form: R(t/2, rest) E R(-t/2, rest) E   (entangler last)
    # otherwise:  E R(-t/2, rest) E R(t/2, rest)   (entangler first)
    if not controls:
        return [ry(theta, target)]
    e = ent(controls[0], target)
    rest = controls[1:]
    if first_form:
        left = _mcry_gates(theta / 2, rest, target, ent, True)
        right = _mcry_gates(-theta / 2, rest, target, ent, False)
        return _join(left, e, right) + [e]
    left = _mcry_gates(-theta / 2, rest, target, ent, True)
    right = _mcry_gates(theta / 2, rest, target, ent, False)
    return [e] + _join(left, e, right)


def _join(left: list[Gate], e: Gate, right: list[Gate]) -> list[Gate]:
    # left ends and right starts with the same entangler on the target; both
    # commute with e (shared target, diagonal or X-type), so the pair cancels.
    if left and right and left[-1].is_two_qubit and left[-1] == right[0]:
        return left[:-1] + [e] + right[1:]
    return left + [e] + right


def multi_controlled_ry_gates(theta: float, ctrl: ControlSpec, entangler: str = "cx",
                              entangler_first: bool = False) -> list[Gate]:
    """Gate list for ``ctrl``-controlled ``RY(theta)`` on ``ctrl.target``.

    ``entangler='cz'`` swaps every CNOT onto the target for a CZ, which acts
    the same way on RY. Uses ``2**m`` two-qubit gates for ``m >= 2``.
    """
    if ctrl.m < 1:
        raise SynthesisError("need at least one control")
    ent = _entangler(entangler)
    flips = [x(q) for q, positive in ctrl.controls if not positive]
    core = _mcry_gates(theta, [q for q, _ in ctrl.controls], ctrl.target, ent, not entangler_first)
    return flips + core + flips


def build_multi_controlled_ry(theta: float, ctrl: ControlSpec, n: int, entangler: str = "cx") -> Circuit:
    return _fits(multi_controlled_ry_gates(theta, ctrl, entangler), n)


# --------------------------------------------------------------------------
# CNOT + CZ fusion

def cnot_cz_replacement(control: int, target: int) -> list[Gate]:
    """Single-CNOT circuit equal to CNOT(control, target) followed by CZ."""
    return [
        ry(-HALF_PI, target), rz(-HALF_PI, target), rz(HALF_PI, control),
        cnot(control, target),
        rz(HALF_PI, target), ry(HALF_PI, target),
    ]


def fuse_cnot_cz(circuit: Circuit) -> Circuit:
    """Replace each CNOT immediately followed (on its two wires) by a CZ on the same pair."""
    gates = list(circuit.gates)
    out: list[Gate] = []
    skip: set[int] = set()
    for a, g in enumerate(gates):
        if a in skip:
            continue
        if g.kind is GateKind.CNOT:
            pair = set(g.operands)
            nxt = next((b for b in range(a + 1, len(gates))
                        if b not in skip and pair & set(gates[b].operands)), None)
            if nxt is not None and gates[nxt].kind is GateKind.CZ and set(gates[nxt].operands) == pair:
                out += cnot_cz_replacement(*g.operands)
                skip.add(nxt)
                continue
        out.append(g)
    return Circuit(circuit.n_qubits, tuple(out))


# --------------------------------------------------------------------------
# Qubit excitations

def _check(spec: ExcitationSpec, *kinds: ExcitationKind):
    if spec.kind not in kinds:
        raise SynthesisError(f"expected {' or '.join(k.name for k in kinds)}, got {spec.kind.name}")


def _single_exchange(i: int, k: int, theta: float) -> list[Gate]:
    a = CALIBRATION["single_exchange_ry"] * theta
    return [
        ry(-HALF_PI, i), rz(-HALF_PI, i), rz(HALF_PI, k),
        cnot(k, i), ry(a, k), rz(-HALF_PI, i),
        cnot(k, i), ry(-a, k), h(i),
        cnot(k, i),
    ]


def build_single_qubit_excitation(spec: ExcitationSpec) -> Circuit:
    """Three-CNOT exchange circuit on qubits i and k."""
    _check(spec, ExcitationKind.SINGLE_QUBIT, ExcitationKind.SINGLE_FERMIONIC)
    i, k = spec.indices
    return _fits(_single_exchange(i, k, spec.theta), spec.n_qubits)


def _double_exchange(i: int, j: int, k: int, l: int, theta: float) -> list[Gate]:
    # The controlled RY on q_l fires for q_k = 0, q_j = 1, q_i = 0 after the
    # pair parities are written onto q_k and q_i. Its first CZ(j, l) sits
    # right after CNOT(l, j) and is fused with it.
    angle = 8 * CALIBRATION["double_core_ry"] * theta
    ctrl = ControlSpec(((j, True), (k, True), (i, True)), l)
    core = multi_controlled_ry_gates(angle, ctrl, entangler="cz", entangler_first=True)
    gates = [cnot(l, k), cnot(j, i), x(k), x(i), cnot(l, j)]
    gates += core
    gates += [cnot(l, j), x(k), x(i), cnot(l, k), cnot(j, i)]
    return gates


def build_double_qubit_excitation(spec: ExcitationSpec) -> Circuit:
    """13-CNOT, CNOT-depth-11 double qubit excitation."""
    _check(spec, ExcitationKind.DOUBLE_QUBIT, ExcitationKind.DOUBLE_FERMIONIC)
    raw = _fits(_double_exchange(*spec.indices, spec.theta), spec.n_qubits)
    return fuse_cnot_cz(raw)


# --------------------------------------------------------------------------
# Fermionic excitations

def _staircase(qubits: Sequence[int]) -> list[Gate]:
    # parity of all qubits accumulates on the lowest one
    top_down = sorted(qubits, reverse=True)
    return [cnot(a, b) for a, b in zip(top_down, top_down[1:])]


def _wrap_parity(gates: list[Gate], pivot: int, parity_qubits: Sequence[int]) -> list[Gate]:
    """Make the RY rotations on ``pivot`` change sign when the parity is odd.

    A CZ from ``pivot`` to the parity qubit goes right before the first and
    right after the last RY on ``pivot``; Z on ``pivot`` conjugates every RY
    in between to the opposite angle and commutes with everything else there.
    """
    stair = _staircase(parity_qubits)
    p = min(parity_qubits)
    on_pivot = [a for a, g in enumerate(gates) if g.kind is GateKind.RY and g.operands[0] == pivot]
    first, last = on_pivot[0], on_pivot[-1]
    body = gates[:first] + [cz(pivot, p)] + gates[first:last + 1] + [cz(pivot, p)] + gates[last + 1:]
    return stair + body + stair[::-1]


def build_single_fermionic_excitation(spec: ExcitationSpec) -> Circuit:
    """``2n - 1`` CNOTs, CNOT depth ``max(5, 2n - 3)`` for ``n = k - i + 1 >= 3``."""
    _check(spec, ExcitationKind.SINGLE_FERMIONIC)
    if spec.n_involved == 2:
        return build_single_qubit_excitation(spec)
    i, k = spec.indices
    gates = _wrap_parity(_single_exchange(i, k, spec.theta), k, spec.parity_qubits())
    return _fits(gates, spec.n_qubits)


def build_double_fermionic_excitation(spec: ExcitationSpec) -> Circuit:
    """``2n + 5`` CNOTs, CNOT depth ``max(13, 2n - 1)`` for ``n >= 5``."""
    _check(spec, ExcitationKind.DOUBLE_FERMIONIC)
    qubit_circuit = build_double_qubit_excitation(spec)
    if spec.n_involved == 4:
        return qubit_circuit
    l = spec.indices[3]
    gates = _wrap_parity(list(qubit_circuit.gates), l, spec.parity_qubits())
    return _fits(gates, spec.n_qubits)


# --------------------------------------------------------------------------
# Standard staircase baselines

def _standard(spec: ExcitationSpec) -> Circuit:
    # Pauli decomposition taken at theta = 1 so theta = 0 keeps the structure.
    unit = generator(spec.with_theta(1.0))
    circuit = Circuit(spec.n_qubits)
    for term in unit.terms:
        # term = c P with c = -i a, so exp(theta c P) = exp(-i (2|a| theta / 2) sign(a) P)
        a = (1j * term.coefficient).real
        p = PauliString(term.letters, math.copysign(1.0, a))
        circuit = circuit + build_pauli_exponential(p, 2 * abs(a) * spec.theta, spec.n_qubits)
    return circuit


def build_standard_single_fermionic(spec: ExcitationSpec) -> Circuit:
    """Two staircase exponentials; ``4(n - 1)`` CNOTs."""
    _check(spec, ExcitationKind.SINGLE_FERMIONIC)
    return _standard(spec)


def build_standard_double_fermionic(spec: ExcitationSpec) -> Circuit:
    """Eight staircase exponentials; ``16(n - 1)`` CNOTs."""
    _check(spec, ExcitationKind.DOUBLE_FERMIONIC)
    return _standard(spec)


_OPTIMIZED = {
    ExcitationKind.SINGLE_QUBIT: build_single_qubit_excitation,
    ExcitationKind.DOUBLE_QUBIT: build_double_qubit_excitation,
    ExcitationKind.SINGLE_FERMIONIC: build_single_fermionic_excitation,
    ExcitationKind.DOUBLE_FERMIONIC: build_double_fermionic_excitation,
}

_STANDARD = {
    ExcitationKind.SINGLE_QUBIT: _standard,
    ExcitationKind.DOUBLE_QUBIT: _standard,
    ExcitationKind.SINGLE_FERMIONIC: build_standard_single_fermionic,
    ExcitationKind.DOUBLE_FERMIONIC: build_standard_double_fermionic,
}


def build(spec: ExcitationSpec, method: str = "optimized") -> Circuit:
    if method == "optimized":
        return _OPTIMIZED[spec.kind](spec)
    if method == "standard":
        return _STANDARD[spec.kind](spec)
    raise SynthesisError(f"unknown method {method!r}")


def calibrate(candidates: Sequence[float] = (1, -1, 0.5, -0.5, 0.25, -0.25, 0.125, -0.125),
              thetas: Sequence[float] = (0.37, 1.21)) -> dict[str, float]:
    """Re-derive CALIBRATION by matching the exact unitaries on a small theta grid."""
    from .pauli import exact_unitary
    from .simulator import equal_up_to_global_phase, unitary_of

    cases = {
        "single_exchange_ry": (ExcitationSpec(ExcitationKind.SINGLE_QUBIT, (0, 1), 0.0),
                               build_single_qubit_excitation),
        "double_core_ry": (ExcitationSpec(ExcitationKind.DOUBLE_QUBIT, (0, 1, 2, 3), 0.0),
                           build_double_qubit_excitation),
    }
    saved = dict(CALIBRATION)
    found = {}
    try:
        for name, (spec, builder) in cases.items():
            for c in candidates:
                CALIBRATION[name] = c
                if all(equal_up_to_global_phase(unitary_of(builder(spec.with_theta(t))),
                                                exact_unitary(spec.with_theta(t)))[0] for t in thetas):
                    found[name] = c
                    break
            else:
                raise SynthesisError(f"no calibration constant matches for {name}")
    finally:
        CALIBRATION.clear()
        CALIBRATION.update(saved)
    return found
