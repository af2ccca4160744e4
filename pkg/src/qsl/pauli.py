"""Pauli strings and real-coefficient Pauli sums.

Tracks stabilizer generators through Clifford-type gate conjugations (CZ,
Hadamard, phase) and through continuous conjugation by diagonal interaction
Hamiltonians. Coefficients stay real because every tracked operator is
Hermitian; operations that would break that raise immediately.

Qubit 0 is the most significant tensor factor, matching linalg.kron.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce

import numpy as np

PAULI_LABELS = "IXYZ"
COEFF_PRUNE_TOL = 1e-14

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_CODE = {label: i for i, label in enumerate(PAULI_LABELS)}


def _single_product_tables():
    """letter/phase lookup for products of single-qubit Paulis."""
    letters = np.empty((4, 4), dtype=np.int8)
    phases = np.empty((4, 4), dtype=complex)
    for a in PAULI_LABELS:
        for b in PAULI_LABELS:
            m = PAULI_MATRICES[a] @ PAULI_MATRICES[b]
            for c in PAULI_LABELS:
                coeff = np.trace(PAULI_MATRICES[c].conj().T @ m) / 2.0
                if abs(coeff) > 0.5:
                    letters[_CODE[a], _CODE[b]] = _CODE[c]
                    phases[_CODE[a], _CODE[b]] = coeff
                    break
    return letters, phases


_PROD_LETTER, _PROD_PHASE = _single_product_tables()


@dataclass(frozen=True)
class PauliString:
    """A real multiple of a tensor product of single-qubit Paulis."""

    letters: str
    coeff: float = 1.0

    def __post_init__(self):
        if not self.letters or any(c not in PAULI_LABELS for c in self.letters):
            raise ValueError(f"invalid Pauli letters {self.letters!r}")
        if not np.isfinite(self.coeff):
            raise ValueError(f"coefficient must be finite, got {self.coeff!r}")

    @property
    def n_qubits(self) -> int:
        return len(self.letters)

    @property
    def weight(self) -> int:
        return sum(1 for c in self.letters if c != "I")

    def to_matrix(self) -> np.ndarray:
        return self.coeff * reduce(np.kron, (PAULI_MATRICES[c] for c in self.letters))


def _canonical(items) -> dict[str, float]:
    merged: dict[str, float] = {}
    for letters, coeff in items:
        merged[letters] = merged.get(letters, 0.0) + coeff
    return {l: c for l, c in merged.items() if abs(c) > COEFF_PRUNE_TOL}


class PauliSum:
    """Real-linear combination of Pauli strings in canonical form.

    Canonical means: duplicate letter patterns merged, coefficients below
    1e-14 pruned, terms ordered lexicographically.
    """

    def __init__(self, terms):
        items = []
        n = None
        for t in terms:
            if not isinstance(t, PauliString):
                t = PauliString(*t)
            if n is None:
                n = t.n_qubits
            elif t.n_qubits != n:
                raise ValueError("mixed qubit counts in one sum")
            items.append((t.letters, float(t.coeff)))
        if n is None:
            raise ValueError("a Pauli sum needs at least one term")
        self._n = n
        self._coeffs = dict(sorted(_canonical(items).items()))

    @classmethod
    def from_dict(cls, n_qubits: int, coeffs: dict[str, float]) -> "PauliSum":
        out = object.__new__(cls)
        out._n = n_qubits
        out._coeffs = dict(sorted(_canonical(coeffs.items()).items()))
        return out

    @classmethod
    def single(cls, n_qubits: int, letter: str, qubit: int, coeff: float = 1.0) -> "PauliSum":
        letters = "".join(letter if q == qubit else "I" for q in range(n_qubits))
        return cls([PauliString(letters, coeff)])

    @property
    def n_qubits(self) -> int:
        return self._n

    @property
    def terms(self) -> tuple[PauliString, ...]:
        return tuple(PauliString(l, c) for l, c in self._coeffs.items())

    @property
    def coeffs(self) -> dict[str, float]:
        return dict(self._coeffs)

    def coeff(self, letters: str) -> float:
        return self._coeffs.get(letters, 0.0)

    def norm(self) -> float:
        """2-norm of the coefficient vector (Pauli strings are orthonormal
        under the normalized trace inner product)."""
        return float(np.sqrt(sum(c * c for c in self._coeffs.values())))

    def distance(self, other: "PauliSum") -> float:
        keys = set(self._coeffs) | set(other._coeffs)
        return float(
            np.sqrt(
                sum((self.coeff(k) - other.coeff(k)) ** 2 for k in keys)
            )
        )

    def to_matrix(self) -> np.ndarray:
        dim = 2**self._n
        out = np.zeros((dim, dim), dtype=complex)
        for letters, coeff in self._coeffs.items():
            out += coeff * reduce(np.kron, (PAULI_MATRICES[c] for c in letters))
        return out

    def apply(self, state: np.ndarray) -> np.ndarray:
        """Apply the operator to a statevector without building the matrix."""
        psi = np.asarray(state, dtype=complex).reshape([2] * self._n)
        out = np.zeros_like(psi)
        for letters, coeff in self._coeffs.items():
            term = psi
            for q, letter in enumerate(letters):
                if letter == "I":
                    continue
                term = np.moveaxis(
                    np.tensordot(PAULI_MATRICES[letter], term, axes=([1], [q])), 0, q
                )
            out = out + coeff * term
        return out.reshape(-1)

    def __repr__(self) -> str:
        body = " + ".join(f"{c:+.6g}*{l}" for l, c in self._coeffs.items())
        return f"PauliSum({body or '0'})"

    @cached_property
    def _arrays(self) -> tuple[np.ndarray, np.ndarray]:
        codes = np.array(
            [[_CODE[c] for c in letters] for letters in self._coeffs], dtype=np.int8
        )
        coeffs = np.array(list(self._coeffs.values()), dtype=float)
        return codes, coeffs


def _conjugation_rule(gate: np.ndarray, qubits: int):
    """Decompose U P U^dagger for every Pauli P on `qubits` qubits.

    Returns {input letters: [(output letters, real coeff), ...]}."""
    dim = 2**qubits
    labels = [""]
    for _ in range(qubits):
        labels = [l + c for l in labels for c in PAULI_LABELS]
    mats = {l: reduce(np.kron, (PAULI_MATRICES[c] for c in l)) for l in labels}
    rule = {}
    for lin, m in mats.items():
        conj = gate @ m @ gate.conj().T
        out = []
        for lout, basis in mats.items():
            coeff = np.trace(basis.conj().T @ conj) / dim
            if abs(coeff) > 1e-14:
                if abs(coeff.imag) > 1e-12:
                    raise ValueError("conjugation broke Hermiticity")
                out.append((lout, float(coeff.real)))
        rule[lin] = out
    return rule


_CZ_GATE = np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex)
_H_GATE = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)

_CZ_RULE = _conjugation_rule(_CZ_GATE, 2)
_H_RULE = _conjugation_rule(_H_GATE, 1)


def _apply_two_qubit_rule(s: PauliSum, rule, a: int, b: int) -> PauliSum:
    out: dict[str, float] = {}
    for letters, coeff in s.coeffs.items():
        for pair, w in rule[letters[a] + letters[b]]:
            nl = list(letters)
            nl[a], nl[b] = pair[0], pair[1]
            key = "".join(nl)
            out[key] = out.get(key, 0.0) + coeff * w
    return PauliSum.from_dict(s.n_qubits, out)


def _apply_one_qubit_rule(s: PauliSum, rule, q: int) -> PauliSum:
    out: dict[str, float] = {}
    for letters, coeff in s.coeffs.items():
        for letter, w in rule[letters[q]]:
            key = letters[:q] + letter + letters[q + 1 :]
            out[key] = out.get(key, 0.0) + coeff * w
    return PauliSum.from_dict(s.n_qubits, out)


def conjugate_cz(s: PauliSum, a: int, b: int) -> PauliSum:
    """S -> CZ_{ab} S CZ_{ab}."""
    return _apply_two_qubit_rule(s, _CZ_RULE, a, b)


def conjugate_hadamard(s: PauliSum, q: int) -> PauliSum:
    """S -> H_q S H_q (X <-> Z, Y -> -Y)."""
    return _apply_one_qubit_rule(s, _H_RULE, q)


def conjugate_phase(s: PauliSum, q: int, phi: float) -> PauliSum:
    """S -> P_q(phi) S P_q(phi)^dagger with P(phi) = diag(1, e^{i phi})."""
    gate = np.diag([1.0, np.exp(1j * phi)])
    return _apply_one_qubit_rule(s, _conjugation_rule(gate, 1), q)


def commutes(a: PauliString, b: PauliString) -> bool:
    """Pauli strings commute iff they anticommute on an even number of qubits."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("qubit counts differ")
    odd = 0
    for x, y in zip(a.letters, b.letters):
        if x != "I" and y != "I" and x != y:
            odd += 1
    return odd % 2 == 0


def commutator_norm(a: PauliSum, b: PauliSum) -> float:
    """Coefficient 2-norm of [A, B], evaluated term-pairwise.

    Vectorized over all term pairs; pairs of commuting strings cancel
    exactly and contribute nothing."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("qubit counts differ")
    ca_codes, ca = a._arrays
    cb_codes, cb = b._arrays
    letters = _PROD_LETTER[ca_codes[:, None, :], cb_codes[None, :, :]]
    phase_ab = _PROD_PHASE[ca_codes[:, None, :], cb_codes[None, :, :]].prod(axis=2)
    phase_ba = _PROD_PHASE[cb_codes[None, :, :], ca_codes[:, None, :]].prod(axis=2)
    coeff = np.outer(ca, cb) * (phase_ab - phase_ba)
    flat_letters = letters.reshape(-1, a.n_qubits)
    flat_coeff = coeff.reshape(-1)
    keep = np.abs(flat_coeff) > 0.0
    if not np.any(keep):
        return 0.0
    uniq, inverse = np.unique(flat_letters[keep], axis=0, return_inverse=True)
    acc = np.zeros(len(uniq), dtype=complex)
    np.add.at(acc, inverse, flat_coeff[keep])
    return float(np.linalg.norm(acc))
