import itertools

import numpy as np
import pytest
from scipy.linalg import expm

from conftest import PAULI, THETAS, pauli_matrix, random_spec
from qexcite.pauli import (
    ExcitationKind, ExcitationSpec, PauliError, PauliString, PauliSum, anticommutator,
    commutator, exact_unitary, generator, jw_ladder, oracle_pair, parity, pauli_mul,
    qubit_ladder, series_expm,
)

# Letters for (i, j, k, l) and the sign in front of -i theta/8.
DOUBLE_PATTERN = {
    "XYXX": 1, "YXXX": 1, "YYYX": 1, "YYXY": 1,
    "XXYX": -1, "XXXY": -1, "YXYY": -1, "XYYY": -1,
}


def _string(n, ops, coefficient=1.0):
    return PauliString.from_dict(n, ops, coefficient)


def test_pauli_mul_basic():
    r = pauli_mul(PauliString("X"), PauliString("Y"))
    assert r.letters == "Z" and r.coefficient == 1j
    r = pauli_mul(PauliString("Z"), PauliString("Z"))
    assert r.letters == "I" and r.coefficient == 1


def test_pauli_mul_two_qubits_matches_matrices():
    a, b = PauliString("XY"), PauliString("YX")
    r = pauli_mul(a, b)
    assert r.letters == "ZZ" and abs(r.coefficient - 1) < 1e-15
    assert np.allclose(pauli_matrix("XY") @ pauli_matrix("YX"), pauli_matrix("ZZ"))


def test_pauli_mul_length_mismatch():
    with pytest.raises(PauliError):
        pauli_mul(PauliString("X"), PauliString("XX"))


def test_pauli_mul_all_pairs_against_matrices(rng):
    for _ in range(50):
        la = "".join(rng.choice(list("IXYZ"), 3))
        lb = "".join(rng.choice(list("IXYZ"), 3))
        ca, cb = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
        r = pauli_mul(PauliString(la, ca), PauliString(lb, cb))
        assert np.allclose(r.to_matrix(), pauli_matrix(la, ca) @ pauli_matrix(lb, cb))
        assert abs(abs(r.coefficient) - abs(ca) * abs(cb)) < 1e-12


def test_identity_string_is_neutral():
    p = PauliString("XZY", 0.5 - 2j)
    assert pauli_mul(PauliString.identity(3), p) == p


def test_to_matrix_little_endian():
    assert np.allclose(PauliString("XZ").to_matrix(), np.kron(PAULI["Z"], PAULI["X"]))


def test_canonical_form():
    a = PauliSum(2, [PauliString("XI", 1), PauliString("ZY", 2), PauliString("XI", 1), PauliString("IZ", 1e-16)])
    b = PauliSum(2, [PauliString("ZY", 2), PauliString("XI", 2)])
    assert a.terms == b.terms
    assert [t.letters for t in PauliSum(2, [PauliString("IX"), PauliString("XI"), PauliString("ZI")]).terms] == \
        ["XI", "ZI", "IX"]


def test_jw_ladder_examples():
    a0 = jw_ladder(0, 1)
    assert a0 == PauliSum(1, [PauliString("X", 0.5), PauliString("Y", 0.5j)])
    a2 = jw_ladder(2, 3)
    assert a2 == PauliSum(3, [PauliString("ZZX", 0.5), PauliString("ZZY", 0.5j)])
    assert jw_ladder(2, 3, dagger=True) == a2.dagger()
    with pytest.raises(PauliError):
        jw_ladder(3, 3)


def test_annihilation_lowers_occupation():
    # a_0 |1> = |0>
    assert np.allclose(jw_ladder(0, 1).to_matrix(), [[0, 1], [0, 0]])


def test_qubit_ladder_relations():
    n = 2
    q0, q0d, q1d = qubit_ladder(0, n), qubit_ladder(0, n, True), qubit_ladder(1, n, True)
    assert anticommutator(q0, q0d) == PauliSum.identity(n)
    assert commutator(q0, q1d).is_zero()
    assert (q0 * q0).is_zero()
    assert np.allclose((qubit_ladder(0, 1).to_matrix()) @ qubit_ladder(0, 1).to_matrix(), 0)
    with pytest.raises(PauliError):
        qubit_ladder(-1, 2)


def test_jw_anticommutation_all_pairs():
    n = 6
    ident = PauliSum.identity(n)
    for i, j in itertools.product(range(n), repeat=2):
        a_i, a_j, a_jd = jw_ladder(i, n), jw_ladder(j, n), jw_ladder(j, n, True)
        expect = ident if i == j else PauliSum(n)
        assert anticommutator(a_i, a_jd) == expect
        assert anticommutator(a_i, a_j).is_zero()
        assert anticommutator(jw_ladder(i, n, True), a_jd).is_zero()


def test_parafermionic_relations_all_pairs():
    n = 6
    ident = PauliSum.identity(n)
    for i, j in itertools.product(range(n), repeat=2):
        q_i, q_j = qubit_ladder(i, n), qubit_ladder(j, n)
        q_id, q_jd = qubit_ladder(i, n, True), qubit_ladder(j, n, True)
        if i == j:
            assert anticommutator(q_i, q_id) == ident
        else:
            assert commutator(q_i, q_jd).is_zero()
        assert commutator(q_i, q_j).is_zero()
        assert commutator(q_id, q_jd).is_zero()


def test_single_qubit_generator_form():
    theta = 0.37
    g = generator(ExcitationSpec("sq", (1, 3), theta, 5))
    expect = PauliSum(5, [_string(5, {1: "X", 3: "Y"}, -0.5j * theta), _string(5, {1: "Y", 3: "X"}, 0.5j * theta)])
    assert g == expect and len(g) == 2


def test_single_fermionic_generator_has_z_string():
    theta = -1.1
    i, k, n = 1, 5, 7
    zs = {r: "Z" for r in range(i + 1, k)}
    g = generator(ExcitationSpec("sf", (i, k), theta, n))
    expect = PauliSum(n, [_string(n, {**zs, i: "X", k: "Y"}, -0.5j * theta),
                          _string(n, {**zs, i: "Y", k: "X"}, 0.5j * theta)])
    assert g == expect


@pytest.mark.parametrize("idx,n", [((0, 1, 2, 3), 4), ((0, 2, 4, 6), 7), ((1, 3, 4, 8), 9)])
def test_double_generators_match_pattern(idx, n):
    theta = 0.61
    i, j, k, l = idx
    zs = {r: "Z" for r in list(range(i + 1, j)) + list(range(k + 1, l))}
    for kind, extra in (("dq", {}), ("df", zs)):
        terms = [_string(n, {**extra, i: s[0], j: s[1], k: s[2], l: s[3]}, -1j * theta / 8 * sign)
                 for s, sign in DOUBLE_PATTERN.items()]
        g = generator(ExcitationSpec(kind, idx, theta, n))
        assert len(g) == 8
        assert g == PauliSum(n, terms)


def test_generators_skew_hermitian_and_commuting(rng):
    for _ in range(40):
        g = generator(random_spec(rng))
        assert g.dagger() == -g
        for a, b in itertools.combinations(g.terms, 2):
            assert a.commutes_with(b)


def test_invalid_specs():
    with pytest.raises(PauliError):
        ExcitationSpec("sf", (2, 1), 0.1)
    with pytest.raises(PauliError):
        ExcitationSpec("df", (0, 1, 2), 0.1)
    with pytest.raises(PauliError):
        ExcitationSpec("dq", (0, 1, 1, 3), 0.1)
    with pytest.raises(PauliError):
        ExcitationSpec("sq", (0, 4), 0.1, n_qubits=4)
    with pytest.raises(ValueError):
        ExcitationSpec("xx", (0, 1), 0.1)


def test_involved_counts():
    assert ExcitationSpec("sf", (2, 6), 0).n_involved == 5
    assert ExcitationSpec("df", (0, 2, 5, 7), 0).n_involved == 6
    assert ExcitationSpec("df", (0, 2, 5, 7), 0).parity_qubits() == (1, 6)


def test_exact_unitary_identity_at_zero():
    for kind, idx in (("sq", (0, 2)), ("dq", (0, 1, 2, 3)), ("sf", (0, 3)), ("df", (0, 2, 3, 5))):
        u = exact_unitary(ExcitationSpec(kind, idx, 0.0))
        assert np.allclose(u, np.eye(len(u)))


def test_single_qubit_excitation_action():
    theta = 0.83
    u = exact_unitary(ExcitationSpec("sq", (0, 1), theta))
    # index 1 = |1_0 0_1>, index 2 = |0_0 1_1>
    assert np.allclose(u[:, 1], [0, np.cos(theta), np.sin(theta), 0])
    assert np.allclose(u[:, 0], [1, 0, 0, 0]) and np.allclose(u[:, 3], [0, 0, 0, 1])


def test_double_qubit_excitation_action():
    theta = 0.83
    u = exact_unitary(ExcitationSpec("dq", (0, 1, 2, 3), theta))
    src, dst = 0b0011, 0b1100
    assert abs(abs(u[src, src]) - abs(np.cos(theta))) < 1e-12
    assert abs(abs(u[dst, src]) - abs(np.sin(theta))) < 1e-12
    for b in range(16):
        if b not in (src, dst):
            assert abs(u[b, b] - 1) < 1e-12


def test_exact_unitary_matches_scipy(rng):
    for _ in range(10):
        spec = random_spec(rng, max_qubits=7)
        ref = expm(generator(spec).to_matrix())
        assert np.max(np.abs(exact_unitary(spec) - ref)) <= 1e-11


def test_series_expm_dense_and_sparse_agree(rng):
    a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    a = (a - a.conj().T) * 2.5
    import scipy.sparse as sp
    assert np.max(np.abs(series_expm(a) - expm(a))) <= 1e-11
    assert np.max(np.abs(series_expm(sp.csr_matrix(a)) - expm(a))) <= 1e-11


def test_oracle_routes_agree_and_unitary(rng):
    for _ in range(15):
        a, b = oracle_pair(random_spec(rng, max_qubits=8))
        assert np.max(np.abs(a - b)) <= 1e-11
        assert np.max(np.abs(a.conj().T @ a - np.eye(len(a)))) <= 1e-11


def test_non_commuting_generator_detected():
    from qexcite.pauli import _commuting_product_exp
    with pytest.raises(PauliError):
        _commuting_product_exp(PauliSum(1, [PauliString("X", 1j), PauliString("Z", 1j)]))


def test_exact_unitary_cap():
    with pytest.raises(PauliError):
        exact_unitary(ExcitationSpec("sf", (0, 12), 0.1), max_qubits=12)


def test_parity():
    assert parity(0, [0, 1, 2]) == 0
    assert parity(0b100, [1, 2, 3]) == 1
    assert parity(0b1110, [1, 2, 3]) == 1
    assert parity(0b0110, [1, 2]) == 0


def test_parity_sector_relation(rng):
    for _ in range(40):
        kind = rng.choice(["sf", "df"])
        spec = random_spec(rng, kind=kind, max_qubits=8)
        q = spec.with_kind(ExcitationKind(kind).qubit_counterpart)
        uf = exact_unitary(spec)
        uq_plus, uq_minus = exact_unitary(q), exact_unitary(q.with_theta(-spec.theta))
        for b in rng.integers(2**spec.n_qubits, size=6):
            uq = uq_minus if parity(int(b), spec.parity_qubits()) else uq_plus
            assert np.max(np.abs(uf[:, b] - uq[:, b])) <= 1e-12


@pytest.mark.parametrize("theta", THETAS)
def test_unitary_for_all_kinds(theta):
    for kind, idx in (("sq", (1, 4)), ("dq", (0, 1, 3, 5)), ("sf", (1, 4)), ("df", (0, 2, 3, 5))):
        u = exact_unitary(ExcitationSpec(kind, idx, theta, 6))
        assert np.max(np.abs(u.conj().T @ u - np.eye(64))) <= 1e-11
