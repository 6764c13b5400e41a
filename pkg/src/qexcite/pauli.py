"""
Pauli-string algebra and exact excitation unitaries.

Contains:
    - PauliString, PauliSum: complex-weighted Pauli products and their sums
    - jw_ladder(), qubit_ladder(): Jordan-Wigner and bare qubit ladder operators
    - ExcitationKind, ExcitationSpec, generator(): excitation generators
    - exact_unitary(): exp(generator) by a commuting-product formula, checked
      against a scaling-and-squaring Taylor series
    - parity()
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

DROP_TOL = 1e-14
ORACLE_AGREEMENT_TOL = 1e-11
DEFAULT_MAX_QUBITS = 12

_LETTERS = "IXYZ"
# (a, b) -> (phase, a*b) for single-qubit Pauli letters
_MUL = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}


class PauliError(ValueError):
    pass


def _popcount(a: np.ndarray) -> np.ndarray:
    a = a.astype(np.int64)
    count = np.zeros_like(a)
    while np.any(a):
        count += a & 1
        a = a >> 1
    return count


@dataclass(frozen=True)
class PauliString:
    """``coefficient * letters[0] (x) letters[1] (x) ...``; ``letters[q]`` acts on qubit q."""

    letters: str
    coefficient: complex = 1.0

    def __post_init__(self):
        if any(c not in _LETTERS for c in self.letters):
            raise PauliError(f"bad Pauli letters {self.letters!r}")
        if not self.letters:
            raise PauliError("empty Pauli string")
        object.__setattr__(self, "coefficient", complex(self.coefficient))

    @classmethod
    def from_dict(cls, n: int, ops: Mapping[int, str], coefficient: complex = 1.0) -> PauliString:
        """``PauliString.from_dict(4, {0: 'X', 3: 'Y'})`` is X0 Y3 on four qubits."""
        letters = ["I"] * n
        for q, p in ops.items():
            if not 0 <= q < n:
                raise PauliError(f"qubit {q} out of range for {n} qubits")
            letters[q] = p
        return cls("".join(letters), coefficient)

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls("I" * n)

    @property
    def n_qubits(self) -> int:
        return len(self.letters)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(q for q, c in enumerate(self.letters) if c != "I")

    def __mul__(self, other):
        if isinstance(other, PauliString):
            return pauli_mul(self, other)
        return PauliString(self.letters, self.coefficient * other)

    __rmul__ = lambda self, other: PauliString(self.letters, self.coefficient * other)

    def commutes_with(self, other: PauliString) -> bool:
        anti = sum(1 for a, b in zip(self.letters, other.letters) if a != "I" and b != "I" and a != b)
        return anti % 2 == 0

    def masks(self) -> tuple[int, int, int]:
        """Bit masks ``(flip, phase, n_y)``: X/Y positions, Y/Z positions, Y count."""
        flip = sum(1 << q for q, c in enumerate(self.letters) if c in "XY")
        zmask = sum(1 << q for q, c in enumerate(self.letters) if c in "YZ")
        return flip, zmask, self.letters.count("Y")

    def column_phases(self) -> np.ndarray:
        """``P|b> = phase[b] |b ^ flip>`` for every basis index b."""
        flip, zmask, ny = self.masks()
        cols = np.arange(2**self.n_qubits)
        signs = 1 - 2 * (_popcount(cols & zmask) % 2)
        return self.coefficient * (1j**ny) * signs

    def apply(self, psi: np.ndarray) -> np.ndarray:
        """``P @ psi`` without forming P; ``psi`` may carry trailing batch axes."""
        flip = self.masks()[0]
        rows = np.arange(2**self.n_qubits) ^ flip
        ph = self.column_phases()
        return (ph[rows].reshape((-1,) + (1,) * (psi.ndim - 1))) * psi[rows]

    def to_matrix(self) -> np.ndarray:
        dim = 2**self.n_qubits
        cols = np.arange(dim)
        m = np.zeros((dim, dim), dtype=complex)
        m[cols ^ self.masks()[0], cols] = self.column_phases()
        return m

    def __repr__(self):
        return f"PauliString({self.letters!r}, {self.coefficient:.6g})"


def pauli_mul(a: PauliString, b: PauliString) -> PauliString:
    if a.n_qubits != b.n_qubits:
        raise PauliError(f"length mismatch: {a.n_qubits} vs {b.n_qubits}")
    phase = 1 + 0j
    out = []
    for p, q in zip(a.letters, b.letters):
        ph, r = _MUL[p, q]
        phase *= ph
        out.append(r)
    return PauliString("".join(out), a.coefficient * b.coefficient * phase)


def _order_key(letters: str) -> str:
    # qubit 0 is least significant, so compare from the highest qubit down
    return letters[::-1]


class PauliSum:
    """Canonical sum of Pauli strings.

    Terms are merged by letter string, entries with ``|c| < DROP_TOL`` are
    dropped and the rest sorted, so two equal operators compare equal.
    """

    __slots__ = ("n_qubits", "_terms")

    def __init__(self, n_qubits: int, terms: Iterable[PauliString] = ()):
        self.n_qubits = n_qubits
        acc: dict[str, complex] = {}
        for t in terms:
            if t.n_qubits != n_qubits:
                raise PauliError(f"term on {t.n_qubits} qubits in a {n_qubits}-qubit sum")
            acc[t.letters] = acc.get(t.letters, 0) + t.coefficient
        self._terms = tuple(
            PauliString(k, acc[k]) for k in sorted(acc, key=_order_key) if abs(acc[k]) >= DROP_TOL
        )

    @property
    def terms(self) -> tuple[PauliString, ...]:
        return self._terms

    @classmethod
    def identity(cls, n: int) -> PauliSum:
        return cls(n, [PauliString.identity(n)])

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __add__(self, other: PauliSum) -> PauliSum:
        self._check(other)
        return PauliSum(self.n_qubits, self._terms + other._terms)

    def __neg__(self) -> PauliSum:
        return PauliSum(self.n_qubits, [t * -1 for t in self._terms])

    def __sub__(self, other: PauliSum) -> PauliSum:
        return self + (-other)

    def __mul__(self, other) -> PauliSum:
        if isinstance(other, PauliSum):
            self._check(other)
            return PauliSum(self.n_qubits, [pauli_mul(a, b) for a in self._terms for b in other._terms])
        if isinstance(other, PauliString):
            return self * PauliSum(self.n_qubits, [other])
        return PauliSum(self.n_qubits, [t * other for t in self._terms])

    def __rmul__(self, other) -> PauliSum:
        if isinstance(other, PauliString):
            return PauliSum(self.n_qubits, [other]) * self
        return self * other

    def dagger(self) -> PauliSum:
        return PauliSum(self.n_qubits, [PauliString(t.letters, t.coefficient.conjugate()) for t in self._terms])

    def is_zero(self) -> bool:
        return not self._terms

    def isclose(self, other: PauliSum, tol: float = 1e-12) -> bool:
        return (self - other).max_abs_coefficient() <= tol

    def max_abs_coefficient(self) -> float:
        return max((abs(t.coefficient) for t in self._terms), default=0.0)

    def __eq__(self, other):
        if not isinstance(other, PauliSum):
            return NotImplemented
        return self.n_qubits == other.n_qubits and self.isclose(other)

    def __hash__(self):
        return hash((self.n_qubits, tuple(t.letters for t in self._terms)))

    def to_matrix(self) -> np.ndarray:
        return self.to_sparse().toarray()

    def to_sparse(self) -> sp.csr_matrix:
        dim = 2**self.n_qubits
        cols = np.arange(dim)
        m = sp.csr_matrix((dim, dim), dtype=complex)
        for t in self._terms:
            m = m + sp.csr_matrix((t.column_phases(), (cols ^ t.masks()[0], cols)), shape=(dim, dim))
        return m

    def _check(self, other: PauliSum):
        if self.n_qubits != other.n_qubits:
            raise PauliError(f"size mismatch: {self.n_qubits} vs {other.n_qubits}")

    def __repr__(self):
        body = " + ".join(f"({t.coefficient:.6g}){t.letters}" for t in self._terms) or "0"
        return f"PauliSum[{self.n_qubits}]({body})"


def anticommutator(a: PauliSum, b: PauliSum) -> PauliSum:
    return a * b + b * a


def commutator(a: PauliSum, b: PauliSum) -> PauliSum:
    return a * b - b * a


def qubit_ladder(i: int, n: int, dagger: bool = False) -> PauliSum:
    """``Q_i = (X_i + iY_i)/2``, or ``Q_i^dagger = (X_i - iY_i)/2``."""
    if not 0 <= i < n:
        raise PauliError(f"index {i} out of range for {n} qubits")
    sign = -1 if dagger else 1
    return PauliSum(n, [
        PauliString.from_dict(n, {i: "X"}, 0.5),
        PauliString.from_dict(n, {i: "Y"}, 0.5j * sign),
    ])


def jw_ladder(i: int, n: int, dagger: bool = False) -> PauliSum:
    """Jordan-Wigner ladder operator: ``Q_i`` times Z on every qubit below i."""
    q = qubit_ladder(i, n, dagger)
    zs = PauliString.from_dict(n, {r: "Z" for r in range(i)})
    return q * zs


class ExcitationKind(Enum):
    SINGLE_QUBIT = "sq"
    DOUBLE_QUBIT = "dq"
    SINGLE_FERMIONIC = "sf"
    DOUBLE_FERMIONIC = "df"

    @property
    def is_single(self) -> bool:
        return self in (ExcitationKind.SINGLE_QUBIT, ExcitationKind.SINGLE_FERMIONIC)

    @property
    def is_fermionic(self) -> bool:
        return self in (ExcitationKind.SINGLE_FERMIONIC, ExcitationKind.DOUBLE_FERMIONIC)

    @property
    def arity(self) -> int:
        return 2 if self.is_single else 4

    @property
    def qubit_counterpart(self) -> ExcitationKind:
        return ExcitationKind.SINGLE_QUBIT if self.is_single else ExcitationKind.DOUBLE_QUBIT


@dataclass(frozen=True)
class ExcitationSpec:
    """An excitation on ``n_qubits`` qubits.

    ``indices`` is ``(i, k)`` for singles, ``(i, j, k, l)`` for doubles,
    strictly increasing. Electrons move from ``i(, j)`` to ``k(, l)``.
    """

    kind: ExcitationKind
    indices: tuple[int, ...]
    theta: float
    n_qubits: int | None = None

    def __post_init__(self):
        kind = ExcitationKind(self.kind)
        idx = tuple(int(v) for v in self.indices)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "theta", float(self.theta))
        if len(idx) != kind.arity:
            raise PauliError(f"{kind.name} needs {kind.arity} indices, got {idx}")
        if idx[0] < 0 or any(a >= b for a, b in zip(idx, idx[1:])):
            raise PauliError(f"indices must be non-negative and strictly increasing, got {idx}")
        n = idx[-1] + 1 if self.n_qubits is None else int(self.n_qubits)
        if idx[-1] >= n:
            raise PauliError(f"index {idx[-1]} does not fit in {n} qubits")
        object.__setattr__(self, "n_qubits", n)
        if not math.isfinite(self.theta):
            raise PauliError("theta must be finite")

    @property
    def n_involved(self) -> int:
        """Qubits the excitation touches: k-i+1 (single) or j-i+l-k+2 (double)."""
        if self.kind.is_single:
            i, k = self.indices
            return k - i + 1
        i, j, k, l = self.indices
        return j - i + l - k + 2

    def parity_qubits(self) -> tuple[int, ...]:
        """Qubits whose parity flips the sign of theta in the fermionic case."""
        if self.kind.is_single:
            i, k = self.indices
            return tuple(range(i + 1, k))
        i, j, k, l = self.indices
        return tuple(range(i + 1, j)) + tuple(range(k + 1, l))

    def with_theta(self, theta: float) -> ExcitationSpec:
        return ExcitationSpec(self.kind, self.indices, theta, self.n_qubits)

    def with_kind(self, kind: ExcitationKind) -> ExcitationSpec:
        return ExcitationSpec(kind, self.indices, self.theta, self.n_qubits)


def generator(spec: ExcitationSpec) -> PauliSum:
    """Skew-Hermitian generator whose exponential is the excitation."""
    n = spec.n_qubits
    ladder = jw_ladder if spec.kind.is_fermionic else qubit_ladder

    def op(idx, dagger):
        return ladder(idx, n, dagger)

    if spec.kind.is_single:
        i, k = spec.indices
        t = op(k, True) * op(i, False)
    else:
        i, j, k, l = spec.indices
        t = op(k, True) * op(l, True) * op(i, False) * op(j, False)
        if not spec.kind.is_fermionic:
            # Sign chosen so the double qubit generator equals the fermionic
            # one with its Z strings removed; then the two agree on the
            # even-parity sector and differ by theta -> -theta on the odd one.
            t = -t
    return (t - t.dagger()) * spec.theta


def parity(basis_index: int, qubits: Sequence[int]) -> int:
    return sum((basis_index >> q) & 1 for q in qubits) % 2


def _commuting_product_exp(gen: PauliSum) -> np.ndarray:
    terms = gen.terms
    for a in range(len(terms)):
        for b in range(a + 1, len(terms)):
            if not terms[a].commutes_with(terms[b]):
                raise PauliError(f"generator terms {terms[a].letters} and {terms[b].letters} do not commute")
    u = np.eye(2**gen.n_qubits, dtype=complex)
    for t in terms:
        c = t.coefficient
        if abs(c.real) > DROP_TOL:
            raise PauliError(f"coefficient {c} of {t.letters} is not imaginary; generator is not skew-Hermitian")
        # (cP)^2 = c^2 = -|c|^2, so exp(cP) = cos|c| + (c/|c|) sin|c| P
        p = PauliString(t.letters)
        u = np.cos(abs(c)) * u + (c / abs(c)) * np.sin(abs(c)) * p.apply(u)
    return u


def series_expm(a, degree: int = 16, target_norm: float = 0.5) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a truncated Taylor series.

    The matrix is scaled by ``2**-s`` until its 1-norm is below
    ``target_norm``. ``a`` may be dense or a scipy sparse matrix; the result
    is always a dense array.
    """
    if sp.issparse(a):
        a = sp.csr_matrix(a, dtype=complex)
        eye = sp.identity(a.shape[0], dtype=complex, format="csr")
        norm = abs(a).sum(axis=0).max() if a.nnz else 0.0
    else:
        a = np.asarray(a, dtype=complex)
        eye = np.eye(a.shape[0], dtype=complex)
        norm = np.max(np.sum(np.abs(a), axis=0)) if a.size else 0.0
    s = 0
    while norm / 2**s >= target_norm:
        s += 1
    b = a / 2**s
    # Horner evaluation of sum_{m<=degree} b^m / m!
    e = eye.copy()
    for m in range(degree, 0, -1):
        e = eye + (b @ e) / m
    for _ in range(s):
        e = e @ e
    return e.toarray() if sp.issparse(e) else e


def exact_unitary(spec: ExcitationSpec, max_qubits: int = DEFAULT_MAX_QUBITS,
                  check: bool = True) -> np.ndarray:
    """``exp(generator(spec))`` as a dense matrix.

    Computed as a product of per-term exponentials (the terms commute); with
    ``check`` the result is compared against :func:`series_expm` and a
    :class:`PauliError` is raised if they disagree by more than
    ``ORACLE_AGREEMENT_TOL``.
    """
    if spec.n_qubits > max_qubits:
        raise PauliError(f"{spec.n_qubits} qubits exceeds the cap of {max_qubits}")
    gen = generator(spec)
    u = _commuting_product_exp(gen)
    if check:
        v = series_expm(gen.to_sparse())
        err = float(np.max(np.abs(u - v)))
        if err > ORACLE_AGREEMENT_TOL:
            raise PauliError(f"oracle disagreement {err:.3g} for {spec}")
    return u


def oracle_pair(spec: ExcitationSpec) -> tuple[np.ndarray, np.ndarray]:
    """Both oracle routes, for cross-checking: (commuting product, series)."""
    gen = generator(spec)
    return _commuting_product_exp(gen), series_expm(gen.to_sparse())
