"""Independent dense-matrix oracle used to cross-check the fast paths.

Everything here is deliberately naive: operators are built as explicit
kron chains and circuits as full 2^n x 2^n matrix products. Nothing is
shared with the package's own linear algebra.
"""

import functools

import numpy as np

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SINGLE = {"I": _I, "X": _X, "Y": _Y, "Z": _Z}


def label_matrix(label: str) -> np.ndarray:
    """Dense matrix for a Pauli label; leftmost char = qubit 0 = low index bit."""
    return functools.reduce(np.kron, [SINGLE[c] for c in reversed(label)])


def embed(n: int, ops: dict) -> np.ndarray:
    """Kron an arbitrary dict {qubit: 2x2 matrix} into the n-qubit space."""
    factors = [ops.get(q, _I) for q in range(n)]
    return functools.reduce(np.kron, reversed(factors))


def rx(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-1j * theta / 2), np.exp(1j * theta / 2)])


_FIXED = {
    "H": np.array([[1, 1], [1, -1]]) / np.sqrt(2),
    "S": np.diag([1, 1j]),
    "SDG": np.diag([1, -1j]),
    "X": _X,
    "Y": _Y,
    "Z": _Z,
}


def gate_unitary(n: int, kind: str, qubits, quarter_turns=None) -> np.ndarray:
    """Full-space unitary for one gate instruction."""
    if kind == "CX":
        c, t = qubits
        p0 = np.array([[1, 0], [0, 0]], dtype=complex)
        p1 = np.array([[0, 0], [0, 1]], dtype=complex)
        return embed(n, {c: p0}) + embed(n, {c: p1, t: _X})
    if kind in ("RX", "RY", "RZ"):
        theta = quarter_turns * np.pi / 2
        u = {"RX": rx, "RY": ry, "RZ": rz}[kind](theta)
        return embed(n, {qubits[0]: u})
    return embed(n, {qubits[0]: _FIXED[kind]})


def simulate(n: int, instructions) -> np.ndarray:
    """Run (kind, qubits, quarter_turns) instructions on |0...0>."""
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = 1.0
    for kind, qubits, k in instructions:
        psi = gate_unitary(n, kind, qubits, k) @ psi
    return psi


def expectation(psi: np.ndarray, label: str) -> float:
    val = np.vdot(psi, label_matrix(label) @ psi)
    assert abs(val.imag) < 1e-10
    return val.real


def hamiltonian_matrix(labels_coeffs) -> np.ndarray:
    """Dense matrix of sum(coeff * label)."""
    total = None
    for label, coeff in labels_coeffs:
        m = coeff * label_matrix(label)
        total = m if total is None else total + m
    return total
