"""Minimal dense statevector kernels for the non-Clifford evaluation path.

Basis indexing is little-endian: bit ``j`` of an amplitude index is
qubit ``j``, matching the bitmask convention of :mod:`.pauli`.
"""

from __future__ import annotations

import numpy as np

from .pauli import PauliString


def zero_statevector(n: int) -> np.ndarray:
    psi = np.zeros(1 << n, dtype=np.complex128)
    psi[0] = 1.0
    return psi


def apply_1q(psi: np.ndarray, u: np.ndarray, q: int) -> np.ndarray:
    """Apply a 2x2 unitary to qubit q."""
    idx = np.arange(len(psi))
    lo = idx[(idx >> q) & 1 == 0]
    hi = lo | (1 << q)
    a, b = psi[lo], psi[hi]
    out = psi.copy()
    out[lo] = u[0, 0] * a + u[0, 1] * b
    out[hi] = u[1, 0] * a + u[1, 1] * b
    return out


def apply_cx(psi: np.ndarray, control: int, target: int) -> np.ndarray:
    idx = np.arange(len(psi))
    perm = idx ^ (((idx >> control) & 1) << target)
    return psi[perm]


def ry_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def rz_matrix(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)]).astype(np.complex128)


def rx_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)


_ROT = {"RY": ry_matrix, "RZ": rz_matrix, "RX": rx_matrix}


def apply_rotation(psi: np.ndarray, kind: str, q: int, theta: float) -> np.ndarray:
    return apply_1q(psi, _ROT[kind](theta), q)


def pauli_expectation(psi: np.ndarray, p: PauliString) -> complex:
    """<psi| P |psi> for a phase-free Pauli."""
    n = p.n
    idx = np.arange(1 << n, dtype=np.uint64)
    perm = (idx ^ np.uint64(p.x)).astype(np.int64)
    signs = 1.0 - 2.0 * (np.bitwise_count(idx & np.uint64(p.z)) & 1).astype(np.float64)
    factor = (1j) ** ((p.x & p.z).bit_count())
    # (P psi)[b ^ x] = factor * (-1)^(z.b) psi[b]  =>  (P psi)[b] uses b ^ x
    w = factor * signs[perm] * psi[perm]
    return complex(np.vdot(psi, w))
