"""Comparison baselines and evaluation metrics.

"HF" here is the operational baseline: the lowest-energy computational
basis state satisfying the Hamiltonian's constraints (a bitstring sees
only the diagonal terms). "EXACT" is the true smallest eigenvalue of the
dense Pauli sum, by full eigendecomposition at small widths and by a
Lanczos-style iterative solver on an implicit matvec above that.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDenominator, NoFeasibleBitstring, TooManyQubits
from .pauli import Hamiltonian

HF_QUBIT_CAP = 24
EXACT_QUBIT_CAP = 14
DENSE_QUBIT_CAP = 10
CHEMICAL_ACCURACY = 1.6e-3
FEASIBILITY_TOL = 1e-9

_SCAN_CHUNK = 1 << 20


@dataclass(frozen=True)
class BaselineResult:
    kind: str  # "HF" or "EXACT"
    energy: float
    witness: str | None
    qubits: int


def _reverse_bits(v: int, n: int) -> int:
    out = 0
    for j in range(n):
        if (v >> j) & 1:
            out |= 1 << (n - 1 - j)
    return out


def _diagonal_profile(terms, n: int):
    """(lex-space zmask, coeff) pairs for the diagonal terms of a Pauli sum.

    Masks are re-indexed so that qubit 0 is the most significant bit; an
    ascending scan index then enumerates bitstrings in lexicographic order.
    """
    return [
        (_reverse_bits(t.pauli.z, n), t.coeff) for t in terms if t.pauli.is_diagonal
    ]


def _diagonal_energies(profile, ks: np.ndarray) -> np.ndarray:
    out = np.zeros(len(ks), dtype=np.float64)
    for mask, coeff in profile:
        parity = (np.bitwise_count(ks & np.uint64(mask)) & 1).astype(np.float64)
        out += coeff * (1.0 - 2.0 * parity)
    return out


def hf_search(h: Hamiltonian) -> BaselineResult:
    """Best feasible computational basis state, by exhaustive scan.

    A bitstring's energy counts only diagonal terms; constraint
    observables are likewise evaluated diagonally, and bitstrings more
    than ``FEASIBILITY_TOL`` from any target are excluded. Ties resolve
    to the lexicographically first witness.
    """
    n = h.n
    if n > HF_QUBIT_CAP:
        raise TooManyQubits(f"hf_search caps at {HF_QUBIT_CAP} qubits, got {n}")
    energy_profile = _diagonal_profile(h.terms, n)
    constraint_profiles = [
        (_diagonal_profile(c.observable, n), c.target) for c in h.constraints
    ]

    best_energy = np.inf
    best_k = None
    total = 1 << n
    for start in range(0, total, _SCAN_CHUNK):
        ks = np.arange(start, min(start + _SCAN_CHUNK, total), dtype=np.uint64)
        energies = _diagonal_energies(energy_profile, ks)
        feasible = np.ones(len(ks), dtype=bool)
        for profile, target in constraint_profiles:
            values = _diagonal_energies(profile, ks)
            feasible &= np.abs(values - target) <= FEASIBILITY_TOL
        if not feasible.any():
            continue
        energies[~feasible] = np.inf
        i = int(np.argmin(energies))
        if energies[i] < best_energy:
            best_energy = float(energies[i])
            best_k = start + i
    if best_k is None:
        raise NoFeasibleBitstring("every bitstring violates some constraint")
    witness = format(best_k, f"0{n}b")  # char j = qubit j
    return BaselineResult("HF", best_energy, witness, n)


def _term_arrays(h: Hamiltonian, idx: np.ndarray):
    """Per-term (permutation, weighted diagonal factor) for the dense action."""
    arrays = []
    for t in h.terms:
        x, z = t.pauli.x, t.pauli.z
        perm = idx ^ x
        phase = (1j) ** ((x & z).bit_count())
        signs = 1.0 - 2.0 * (np.bitwise_count(idx & np.uint64(z)) & 1).astype(np.float64)
        # row b picks v[b ^ x] with the sign pattern of column (b ^ x)
        col_signs = signs[perm]
        arrays.append((perm, (t.coeff * phase) * col_signs))
    return arrays


def hamiltonian_matrix(h: Hamiltonian) -> np.ndarray:
    """Dense 2^n x 2^n matrix of the Pauli sum."""
    dim = 1 << h.n
    idx = np.arange(dim, dtype=np.uint64)
    m = np.zeros((dim, dim), dtype=np.complex128)
    for perm, vals in _term_arrays(h, idx):
        m[perm.astype(np.int64), idx.astype(np.int64)] += vals[perm.astype(np.int64)]
    return m


def exact_ground(h: Hamiltonian) -> BaselineResult:
    """Smallest eigenvalue of the Hamiltonian (relative tolerance 1e-8)."""
    n = h.n
    if n > EXACT_QUBIT_CAP:
        raise TooManyQubits(f"exact_ground caps at {EXACT_QUBIT_CAP} qubits, got {n}")
    dim = 1 << n
    idx = np.arange(dim, dtype=np.uint64)

    if all(t.pauli.is_diagonal for t in h.terms):
        diag = np.zeros(dim, dtype=np.float64)
        for perm, vals in _term_arrays(h, idx):
            diag += vals.real
        return BaselineResult("EXACT", float(diag.min()), None, n)

    if n <= DENSE_QUBIT_CAP:
        energy = float(np.linalg.eigvalsh(hamiltonian_matrix(h))[0])
        return BaselineResult("EXACT", energy, None, n)

    from scipy.sparse.linalg import LinearOperator, eigsh

    arrays = _term_arrays(h, idx)
    perms = [p.astype(np.int64) for p, _ in arrays]

    def matvec(v):
        out = np.zeros(dim, dtype=np.complex128)
        for perm, (_, vals) in zip(perms, arrays):
            out += vals * v[perm]
        return out

    op = LinearOperator((dim, dim), matvec=matvec, dtype=np.complex128)
    vals = eigsh(op, k=1, which="SA", tol=1e-10, return_eigenvectors=False)
    return BaselineResult("EXACT", float(vals[0]), None, n)


def ground_statevector(h: Hamiltonian) -> np.ndarray:
    """Normalized eigenvector of the smallest eigenvalue (dense path)."""
    if h.n > EXACT_QUBIT_CAP:
        raise TooManyQubits(f"ground_statevector caps at {EXACT_QUBIT_CAP} qubits")
    w, v = np.linalg.eigh(hamiltonian_matrix(h))
    return v[:, 0]


def recovered_correlation(e_method: float, e_hf: float, e_exact: float) -> float:
    """Percent of the HF-to-exact gap recovered by a method's energy."""
    denom = e_hf - e_exact
    if abs(denom) < 1e-12:
        raise DegenerateDenominator(
            f"correlation gap |{e_hf} - {e_exact}| is numerically zero"
        )
    if denom < 0:
        raise ValueError("undefined: HF energy below exact ground energy")
    return 100.0 * (e_hf - e_method) / denom


def chem_accurate(e_method: float, e_exact: float) -> bool:
    """Strictly inside the chemical-accuracy window of 1.6e-3 Hartree."""
    return abs(e_method - e_exact) < CHEMICAL_ACCURACY
