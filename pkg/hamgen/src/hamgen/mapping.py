"""Fermion-to-qubit mapping: Jordan-Wigner, parity, and two-qubit reduction.

Qubit operators are dicts {(x_mask, z_mask): complex coefficient} where
bit j of a mask addresses qubit j and (x, z) names the I/X/Y/Z product
(both bits set = Y, phase-free). Spin orbitals are block ordered (all
alpha, then all beta), so in the parity encoding qubit m-1 carries the
alpha-occupation parity and qubit 2m-1 the total parity; both are
conserved and can be replaced by their sector eigenvalues.
"""

from __future__ import annotations

import numpy as np

PRUNE = 1e-12


def op_identity(coeff=1.0) -> dict:
    return {(0, 0): complex(coeff)}


def op_add(acc: dict, other: dict, scale=1.0) -> dict:
    for key, c in other.items():
        acc[key] = acc.get(key, 0.0) + scale * c
    return acc


def _phase_exponent(ax, az, bx, bz, cx, cz) -> int:
    return (
        (ax & az).bit_count()
        + (bx & bz).bit_count()
        + 2 * (az & bx).bit_count()
        - (cx & cz).bit_count()
    ) % 4


def op_mul(A: dict, B: dict) -> dict:
    out: dict = {}
    for (ax, az), ca in A.items():
        for (bx, bz), cb in B.items():
            cx, cz = ax ^ bx, az ^ bz
            phase = (1j) ** _phase_exponent(ax, az, bx, bz, cx, cz)
            key = (cx, cz)
            out[key] = out.get(key, 0.0) + ca * cb * phase
    return out


def op_cleanup(op: dict, threshold=PRUNE) -> dict:
    return {k: c for k, c in op.items() if abs(c) > threshold}


def ladder(M: int, j: int, dagger: bool) -> dict:
    """a_j (or its adjoint) under Jordan-Wigner with a Z string below j."""
    zstring = (1 << j) - 1
    x_part = (1 << j, zstring)
    y_part = (1 << j, zstring | (1 << j))
    sign = -0.5j if dagger else 0.5j
    return {x_part: 0.5, y_part: sign}


def number_operator(M: int) -> dict:
    op: dict = {(0, 0): 0.5 * M}
    for j in range(M):
        op[(0, 1 << j)] = -0.5
    return op


def sz_operator(M: int) -> dict:
    """Spin projection (block ordering: first half alpha, second beta)."""
    m = M // 2
    op: dict = {(0, 0): 0.0}
    for j in range(M):
        sign = 1.0 if j < m else -1.0
        op[(0, 0)] += 0.25 * sign
        op[(0, 1 << j)] = -0.25 * sign
    return op


def fermionic_hamiltonian(h1: np.ndarray, eri: np.ndarray, const: float) -> dict:
    """Qubit operator (occupation rep) of the second-quantized Hamiltonian.

    ``eri`` is chemist (pq|rs); spin orbitals block ordered.
    """
    m = h1.shape[0]
    M = 2 * m
    total: dict = {(0, 0): complex(const)}
    for p in range(m):
        for q in range(m):
            if h1[p, q] == 0.0:
                continue
            for off in (0, m):
                term = op_mul(ladder(M, p + off, True), ladder(M, q + off, False))
                op_add(total, term, h1[p, q])
    for p in range(m):
        for q in range(m):
            for r in range(m):
                for s in range(m):
                    g = eri[p, q, r, s]
                    if g == 0.0:
                        continue
                    for so in (0, m):
                        for to in (0, m):
                            term = op_mul(
                                op_mul(
                                    ladder(M, p + so, True), ladder(M, r + to, True)
                                ),
                                op_mul(
                                    ladder(M, s + to, False), ladder(M, q + so, False)
                                ),
                            )
                            op_add(total, term, 0.5 * g)
    return op_cleanup(total)


def parity_transform(op: dict, M: int) -> dict:
    """Conjugate from occupation to parity encoding (prefix-sum basis change)."""
    out = dict(op)
    for j in range(1, M):
        mc, mt = 1 << (j - 1), 1 << j
        step: dict = {}
        for (x, z), c in out.items():
            xc, zt = x & mc, z & mt
            if xc and zt and (bool(x & mt) == bool(z & mc)):
                c = -c
            if xc:
                x ^= mt
            if zt:
                z ^= mc
            key = (x, z)
            step[key] = step.get(key, 0.0) + c
        out = step
    return out


def _drop_bits(v: int, q1: int, q2: int) -> int:
    lower = v & ((1 << q1) - 1)
    mid = (v >> (q1 + 1)) & ((1 << (q2 - q1 - 1)) - 1)
    upper = v >> (q2 + 1)
    return lower | (mid << q1) | (upper << (q2 - 1))


def two_qubit_reduce(op: dict, M: int, n_alpha: int, n_electrons: int) -> dict:
    """Replace the two conserved parity qubits by their eigenvalues.

    Valid for parity-encoded block-ordered operators that commute with
    both symmetries (every term carries I or Z there).
    """
    m = M // 2
    q1, q2 = m - 1, M - 1
    e1 = -1.0 if n_alpha % 2 else 1.0
    e2 = -1.0 if n_electrons % 2 else 1.0
    out: dict = {}
    for (x, z), c in op.items():
        if (x >> q1) & 1 or (x >> q2) & 1:
            raise ValueError("operator does not commute with the parity symmetries")
        if (z >> q1) & 1:
            c = c * e1
        if (z >> q2) & 1:
            c = c * e2
        key = (_drop_bits(x, q1, q2), _drop_bits(z, q1, q2))
        out[key] = out.get(key, 0.0) + c
    return op_cleanup(out)


def assert_real(op: dict, tol=1e-9) -> dict:
    for key, c in op.items():
        if abs(c.imag) > tol:
            raise ValueError(f"non-Hermitian residue {c.imag:.3e} on term {key}")
    return {k: c.real for k, c in op.items()}


def pauli_label(x: int, z: int, n: int) -> str:
    return "".join("IXZY"[((x >> j) & 1) + 2 * ((z >> j) & 1)] for j in range(n))


def to_matrix(op: dict, n: int) -> np.ndarray:
    """Dense matrix of a qubit operator (little-endian index bits)."""
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=complex)
    idx = np.arange(dim, dtype=np.uint64)
    cols = idx.astype(np.int64)
    for (x, z), c in op.items():
        phase = (1j) ** ((x & z).bit_count())
        signs = 1.0 - 2.0 * (np.bitwise_count(idx & np.uint64(z)).astype(np.float64) % 2)
        out[(idx ^ np.uint64(x)).astype(np.int64), cols] += c * phase * signs
    return out
