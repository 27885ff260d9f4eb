"""Determinant-basis full CI: the independent energy oracle.

Works directly with fermionic ladder operators on occupation bitmasks
(block ordering: alpha spin orbitals 0..m-1, beta m..2m-1), so it shares
nothing with the qubit-mapping pipeline it validates.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np


def _mask(orbs) -> int:
    out = 0
    for o in orbs:
        out |= 1 << o
    return out


def _annihilate(mask: int, orb: int):
    if not (mask >> orb) & 1:
        return None
    sign = -1.0 if ((mask & ((1 << orb) - 1)).bit_count() & 1) else 1.0
    return mask & ~(1 << orb), sign


def _create(mask: int, orb: int):
    if (mask >> orb) & 1:
        return None
    sign = -1.0 if ((mask & ((1 << orb) - 1)).bit_count() & 1) else 1.0
    return mask | (1 << orb), sign


def _apply_string(mask: int, ops):
    """ops = [(create?, orbital), ...], applied right to left."""
    sign = 1.0
    for dagger, orb in reversed(ops):
        step = _create(mask, orb) if dagger else _annihilate(mask, orb)
        if step is None:
            return None
        mask, s = step
        sign *= s
    return mask, sign


def determinants(m: int, n_alpha: int, n_beta: int):
    """All (n_alpha, n_beta) occupation bitmasks over 2m spin orbitals."""
    dets = []
    for alpha in combinations(range(m), n_alpha):
        for beta in combinations(range(m), n_beta):
            dets.append(_mask(alpha) | (_mask(beta) << m))
    return dets


def fci_matrix(h1: np.ndarray, eri: np.ndarray, n_alpha: int, n_beta: int):
    """Dense Hamiltonian in the determinant basis (chemist-notation eri)."""
    m = h1.shape[0]
    dets = determinants(m, n_alpha, n_beta)
    index = {d: i for i, d in enumerate(dets)}
    dim = len(dets)
    H = np.zeros((dim, dim))
    spins = (0, m)  # block offsets

    for j, det in enumerate(dets):
        for p in range(m):
            for q in range(m):
                hpq = h1[p, q]
                if hpq != 0.0:
                    for off in spins:
                        res = _apply_string(det, [(True, p + off), (False, q + off)])
                        if res is not None:
                            H[index[res[0]], j] += hpq * res[1]
                for r in range(m):
                    for s in range(m):
                        g = eri[p, q, r, s]
                        if g == 0.0:
                            continue
                        for so in spins:
                            for to in spins:
                                res = _apply_string(
                                    det,
                                    [
                                        (True, p + so),
                                        (True, r + to),
                                        (False, s + to),
                                        (False, q + so),
                                    ],
                                )
                                if res is not None:
                                    H[index[res[0]], j] += 0.5 * g * res[1]
    return H, dets


def fci_ground_energy(h1, eri, n_alpha, n_beta) -> float:
    """Lowest active-space electronic energy in the (n_alpha, n_beta) sector."""
    H, _ = fci_matrix(h1, eri, n_alpha, n_beta)
    return float(np.linalg.eigvalsh(H)[0])
