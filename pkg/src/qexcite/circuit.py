"""
Gate-level circuit IR.

Contains:
    - GateKind: the seven primitive gate kinds
    - Gate: one gate application (kind, angle, operands)
    - Circuit: immutable ordered gate sequence on n qubits
    - ResourceReport / resources(): CNOT count and CNOT depth
    - inverse(), emit_qasm(), parse_qasm()
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence


class GateKind(Enum):
    H = "h"
    X = "x"
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    CNOT = "cx"
    CZ = "cz"

    @property
    def n_qubits(self) -> int:
        return 2 if self in (GateKind.CNOT, GateKind.CZ) else 1

    @property
    def is_rotation(self) -> bool:
        return self in (GateKind.RX, GateKind.RY, GateKind.RZ)


class CircuitError(ValueError):
    """Raised for malformed gates or gates that do not fit a circuit."""


@dataclass(frozen=True)
class Gate:
    """A single gate application.

    ``operands`` is ``(target,)`` for one-qubit kinds, ``(control, target)``
    for CNOT and an unordered pair for CZ.
    """

    kind: GateKind
    operands: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        ops = tuple(int(q) for q in self.operands)
        object.__setattr__(self, "operands", ops)
        if len(ops) != self.kind.n_qubits:
            raise CircuitError(f"{self.kind.name} takes {self.kind.n_qubits} operand(s), got {len(ops)}")
        if len(set(ops)) != len(ops):
            raise CircuitError(f"duplicate operands {ops} for {self.kind.name}")
        if any(q < 0 for q in ops):
            raise CircuitError(f"negative qubit index in {ops}")
        if self.kind.is_rotation:
            if self.angle is None or not math.isfinite(self.angle):
                raise CircuitError(f"{self.kind.name} needs a finite angle, got {self.angle!r}")
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise CircuitError(f"{self.kind.name} takes no angle")

    @property
    def is_two_qubit(self) -> bool:
        return self.kind.n_qubits == 2

    def inverse(self) -> Gate:
        if self.kind.is_rotation:
            return Gate(self.kind, self.operands, -self.angle)
        return self

    def __repr__(self):
        args = ",".join(map(str, self.operands))
        if self.angle is None:
            return f"{self.kind.name}({args})"
        return f"{self.kind.name}({self.angle:.6g};{args})"


# Short constructors used throughout the synthesis code.
def h(q: int) -> Gate: return Gate(GateKind.H, (q,))
def x(q: int) -> Gate: return Gate(GateKind.X, (q,))
def rx(theta: float, q: int) -> Gate: return Gate(GateKind.RX, (q,), theta)
def ry(theta: float, q: int) -> Gate: return Gate(GateKind.RY, (q,), theta)
def rz(theta: float, q: int) -> Gate: return Gate(GateKind.RZ, (q,), theta)
def cnot(control: int, target: int) -> Gate: return Gate(GateKind.CNOT, (control, target))
def cz(a: int, b: int) -> Gate: return Gate(GateKind.CZ, (a, b))


@dataclass(frozen=True)
class Circuit:
    """Ordered gate sequence on ``n_qubits`` qubits. Immutable."""

    n_qubits: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        if int(self.n_qubits) < 1:
            raise CircuitError(f"n_qubits must be positive, got {self.n_qubits}")
        gates = tuple(self.gates)
        for g in gates:
            _check_fits(g, self.n_qubits)
        object.__setattr__(self, "gates", gates)

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def append(self, gate: Gate) -> Circuit:
        return append(self, gate)

    def extend(self, gates: Iterable[Gate]) -> Circuit:
        return Circuit(self.n_qubits, self.gates + tuple(gates))

    def __add__(self, other: Circuit) -> Circuit:
        """Concatenation in time order: ``self`` runs first."""
        if not isinstance(other, Circuit):
            return NotImplemented
        if other.n_qubits != self.n_qubits:
            raise CircuitError(f"cannot concatenate {self.n_qubits}- and {other.n_qubits}-qubit circuits")
        return Circuit(self.n_qubits, self.gates + other.gates)


def _check_fits(gate: Gate, n_qubits: int):
    if not isinstance(gate, Gate):
        raise CircuitError(f"not a Gate: {gate!r}")
    bad = [q for q in gate.operands if q >= n_qubits]
    if bad:
        raise CircuitError(f"operand(s) {bad} out of range for {n_qubits} qubits")


def append(circuit: Circuit, gate: Gate) -> Circuit:
    _check_fits(gate, circuit.n_qubits)
    return Circuit(circuit.n_qubits, circuit.gates + (gate,))


def inverse(circuit: Circuit) -> Circuit:
    return Circuit(circuit.n_qubits, tuple(g.inverse() for g in reversed(circuit.gates)))


@dataclass(frozen=True)
class ResourceReport:
    cnot_count: int
    cnot_depth: int
    cx_count: int
    cz_count: int
    single_qubit_count: int
    total_gates: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def cnot_depth(gates: Sequence[Gate], n_qubits: int) -> int:
    # ASAP layering of two-qubit gates only; one-qubit gates are free.
    level = [0] * n_qubits
    depth = 0
    for g in gates:
        if not g.is_two_qubit:
            continue
        a, b = g.operands
        layer = max(level[a], level[b]) + 1
        level[a] = level[b] = layer
        depth = max(depth, layer)
    return depth


def resources(circuit: Circuit) -> ResourceReport:
    cx = sum(1 for g in circuit.gates if g.kind is GateKind.CNOT)
    czs = sum(1 for g in circuit.gates if g.kind is GateKind.CZ)
    return ResourceReport(
        cnot_count=cx + czs,
        cnot_depth=cnot_depth(circuit.gates, circuit.n_qubits),
        cx_count=cx,
        cz_count=czs,
        single_qubit_count=len(circuit.gates) - cx - czs,
        total_gates=len(circuit.gates),
    )


def emit_qasm(circuit: Circuit) -> str:
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";', f"qreg q[{circuit.n_qubits}];"]
    for g in circuit.gates:
        args = ",".join(f"q[{q}]" for q in g.operands)
        if g.angle is None:
            lines.append(f"{g.kind.value} {args};")
        else:
            # 17 significant digits round-trips any double exactly.
            lines.append(f"{g.kind.value}({g.angle:.16e}) {args};")
    return "\n".join(lines) + "\n"


_QASM_GATE = re.compile(
    r"^(?P<name>[a-z]+)(?:\((?P<angle>[^)]*)\))?\s+(?P<args>q\[\d+\](?:\s*,\s*q\[\d+\])*)\s*;$"
)


def parse_qasm(text: str) -> Circuit:
    """Read back the subset written by :func:`emit_qasm`.

    Only the seven gate names, one ``qreg`` and literal float angles are
    accepted; anything else raises :class:`CircuitError`.
    """
    kinds = {k.value: k for k in GateKind}
    n_qubits = None
    gates = []
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("//")]
    if len(lines) < 2 or lines[0] != "OPENQASM 2.0;" or lines[1] != 'include "qelib1.inc";':
        raise CircuitError("missing OpenQASM 2.0 header")
    for ln in lines[2:]:
        m = re.fullmatch(r"qreg q\[(\d+)\];", ln)
        if m:
            if n_qubits is not None:
                raise CircuitError("more than one qreg")
            n_qubits = int(m.group(1))
            continue
        m = _QASM_GATE.match(ln)
        if not m or m.group("name") not in kinds:
            raise CircuitError(f"unsupported statement: {ln!r}")
        if n_qubits is None:
            raise CircuitError("gate before qreg declaration")
        kind = kinds[m.group("name")]
        ops = tuple(int(v) for v in re.findall(r"q\[(\d+)\]", m.group("args")))
        angle = float(m.group("angle")) if m.group("angle") is not None else None
        gates.append(Gate(kind, ops, angle))
    if n_qubits is None:
        raise CircuitError("no qreg declaration")
    return Circuit(n_qubits, tuple(gates))
