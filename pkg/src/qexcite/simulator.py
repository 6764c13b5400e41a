"""Dense statevector simulation and unitary extraction.

Basis indexing is little-endian: bit ``r`` of a basis index is the state of
qubit ``r``. Gate matrices follow the usual conventions,
``R_P(theta) = exp(-i theta P / 2)``.
"""
from __future__ import annotations

import numpy as np

from .circuit import Circuit, Gate, GateKind

DEFAULT_TOL = 1e-10
DEFAULT_MAX_QUBITS = 12


class SimulationError(ValueError):
    pass


_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)


def gate_matrix(gate: Gate) -> np.ndarray:
    """2x2 matrix of a one-qubit gate."""
    kind, t = gate.kind, gate.angle
    if kind is GateKind.H:
        return _H
    if kind is GateKind.X:
        return _X
    if kind in (GateKind.RX, GateKind.RY, GateKind.RZ):
        c, s = np.cos(t / 2), np.sin(t / 2)
        if kind is GateKind.RX:
            return np.array([[c, -1j * s], [-1j * s, c]])
        if kind is GateKind.RY:
            return np.array([[c, -s], [s, c]], dtype=complex)
        return np.array([[np.exp(-0.5j * t), 0], [0, np.exp(0.5j * t)]])
    raise SimulationError(f"{kind.name} is not a one-qubit gate")


def _apply_gates(tensor: np.ndarray, gates, n: int) -> np.ndarray:
    # tensor has n qubit axes followed by one batch axis; axis n-1-q holds qubit q.
    def ax(q):
        return n - 1 - q

    for g in gates:
        if g.kind is GateKind.CNOT:
            c, t = g.operands
            sel = [slice(None)] * (n + 1)
            sel[ax(c)] = 1
            sel = tuple(sel)
            # the control axis disappears from the view; shift the target axis
            t_ax = ax(t) - (1 if ax(t) > ax(c) else 0)
            tensor[sel] = np.flip(tensor[sel], axis=t_ax).copy()
        elif g.kind is GateKind.CZ:
            a, b = g.operands
            sel = [slice(None)] * (n + 1)
            sel[ax(a)] = 1
            sel[ax(b)] = 1
            tensor[tuple(sel)] *= -1
        else:
            m = gate_matrix(g)
            q = ax(g.operands[0])
            tensor = np.moveaxis(np.tensordot(m, tensor, axes=([1], [q])), 0, q)
    return np.ascontiguousarray(tensor)


def apply_circuit(circuit: Circuit, state: np.ndarray) -> np.ndarray:
    """Apply ``circuit`` to a statevector (or a ``(2**n, k)`` batch of them)."""
    n = circuit.n_qubits
    psi = np.asarray(state, dtype=complex)
    if psi.shape[0] != 2**n or psi.ndim not in (1, 2):
        raise SimulationError(f"state of shape {psi.shape} does not match {n} qubits")
    batch = psi.reshape(2**n, -1)
    tensor = batch.reshape((2,) * n + (batch.shape[1],)).copy()
    out = _apply_gates(tensor, circuit.gates, n).reshape(2**n, -1)
    return out.reshape(psi.shape)


def basis_state(index: int, n_qubits: int) -> np.ndarray:
    psi = np.zeros(2**n_qubits, dtype=complex)
    psi[index] = 1.0
    return psi


def unitary_of(circuit: Circuit, max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    """Full unitary; column ``j`` is the image of basis state ``j``."""
    n = circuit.n_qubits
    if n > max_qubits:
        raise SimulationError(f"{n} qubits exceeds the unitary cap of {max_qubits}")
    return apply_circuit(circuit, np.eye(2**n, dtype=complex))


def equal_up_to_global_phase(u: np.ndarray, v: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Compare two unitaries modulo a global phase.

    The phase is fixed from ``tr(V^dagger U)``; the returned distance is
    ``max|U - e^{i phi} V|`` at that phase.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise SimulationError(f"dimension mismatch {u.shape} vs {v.shape}")
    overlap = np.vdot(v, u)
    if abs(overlap) < 1e-300:
        phase = 1.0
    else:
        phase = overlap / abs(overlap)
    dist = float(np.max(np.abs(u - phase * v))) if u.size else 0.0
    return dist <= tol, dist


def is_unitary(u: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    u = np.asarray(u)
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)
