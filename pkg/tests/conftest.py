import functools

import numpy as np
import pytest

from qexcite.pauli import ExcitationKind, ExcitationSpec

THETAS = (0.0, 0.1, -0.1, np.pi / 4, -np.pi / 4, np.pi / 2, 1.7, np.pi)

_acceptance_lines: list[str] = []


def record_acceptance(line: str):
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_spec(rng, kind=None, max_qubits=10, theta=None):
    """Random valid ExcitationSpec on at most ``max_qubits`` qubits."""
    if kind is None:
        kind = list(ExcitationKind)[rng.integers(4)]
    kind = ExcitationKind(kind)
    arity = kind.arity
    n = int(rng.integers(arity, max_qubits + 1))
    idx = tuple(sorted(int(v) for v in rng.choice(n, size=arity, replace=False)))
    if theta is None:
        theta = float(rng.uniform(-np.pi, np.pi))
    return ExcitationSpec(kind, idx, theta, n)


# --- independent matrix oracles -------------------------------------------

I2 = np.eye(2, dtype=complex)
PAULI = {
    "I": I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def kron_ops(n, ops):
    """Kronecker product with qubit 0 as the least significant factor."""
    mats = [ops.get(q, I2) for q in range(n)]
    return functools.reduce(np.kron, mats[::-1])


def pauli_matrix(letters, coefficient=1.0):
    return coefficient * kron_ops(len(letters), {q: PAULI[c] for q, c in enumerate(letters)})


def ry_matrix(theta):
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def direct_controlled_ry(theta, controls, target, n):
    """Dense controlled RY built entry by entry; ``controls`` holds (qubit, positive) pairs."""
    u = np.eye(2**n, dtype=complex)
    r = ry_matrix(theta)
    for b in range(2**n):
        if (b >> target) & 1:
            continue
        if all(((b >> q) & 1) == int(pos) for q, pos in controls):
            pair = [b, b | (1 << target)]
            u[np.ix_(pair, pair)] = r
    return u
