"""Closed-shell restricted Hartree-Fock with DIIS convergence."""

from __future__ import annotations

import numpy as np

from .errors import SCFNonConvergence


def rhf(S, hcore, eri, n_electrons, max_iter=200, tol=1e-10):
    """Returns (electronic energy, MO coefficients, orbital energies).

    ``eri`` is the chemist-notation (ij|kl) tensor. Orbitals come out in
    ascending energy order; occupation fills the lowest n_electrons/2.
    """
    if n_electrons % 2:
        raise ValueError("rhf needs an even electron count")
    n_occ = n_electrons // 2
    s_val, s_vec = np.linalg.eigh(S)
    if s_val.min() < 1e-10:
        raise SCFNonConvergence("overlap matrix is numerically singular")
    X = s_vec @ np.diag(s_val**-0.5) @ s_vec.T

    def solve(F):
        Fp = X.T @ F @ X
        eps, Cp = np.linalg.eigh(Fp)
        return eps, X @ Cp

    eps, C = solve(hcore)
    D = 2.0 * C[:, :n_occ] @ C[:, :n_occ].T
    energy = None
    diis_F, diis_err = [], []
    for _ in range(max_iter):
        J = np.einsum("ijkl,kl->ij", eri, D)
        K = np.einsum("ikjl,kl->ij", eri, D)
        F = hcore + J - 0.5 * K
        err = F @ D @ S - S @ D @ F
        diis_F.append(F)
        diis_err.append(err)
        if len(diis_F) > 8:
            diis_F.pop(0)
            diis_err.pop(0)
        if len(diis_F) > 1:
            F = _diis_extrapolate(diis_F, diis_err)
        eps, C = solve(F)
        D_new = 2.0 * C[:, :n_occ] @ C[:, :n_occ].T
        e_new = 0.5 * np.sum(D_new * (hcore + F))
        converged = (
            energy is not None
            and abs(e_new - energy) < tol
            and np.max(np.abs(D_new - D)) < 1e-8
        )
        D, energy = D_new, e_new
        if converged:
            return float(energy), C, eps
    raise SCFNonConvergence(f"SCF not converged after {max_iter} iterations")


def _diis_extrapolate(fock_list, err_list):
    m = len(fock_list)
    B = -np.ones((m + 1, m + 1))
    B[m, m] = 0.0
    for i in range(m):
        for j in range(m):
            B[i, j] = np.sum(err_list[i] * err_list[j])
    rhs = np.zeros(m + 1)
    rhs[m] = -1.0
    try:
        coeffs = np.linalg.solve(B, rhs)[:m]
    except np.linalg.LinAlgError:
        return fock_list[-1]
    return sum(c * F for c, F in zip(coeffs, fock_list))


def ao_to_mo(hcore, eri, C):
    """One- and two-electron integrals in the MO basis (chemist notation)."""
    h_mo = C.T @ hcore @ C
    eri_mo = np.einsum("pi,qj,pqrs,rk,sl->ijkl", C, C, eri, C, C, optimize=True)
    return h_mo, eri_mo


def active_space(h_mo, eri_mo, frozen, removed):
    """Fold frozen (doubly occupied) orbitals into a core energy and an
    effective one-body term; drop removed orbitals entirely.

    Returns (core_energy, h_active, eri_active, active_indices).
    """
    m = h_mo.shape[0]
    frozen = sorted(frozen)
    removed = sorted(removed)
    active = [p for p in range(m) if p not in frozen and p not in removed]
    e_core = 0.0
    for i in frozen:
        e_core += 2.0 * h_mo[i, i]
        for j in frozen:
            e_core += 2.0 * eri_mo[i, i, j, j] - eri_mo[i, j, j, i]
    h_eff = h_mo.copy()
    for i in frozen:
        h_eff += 2.0 * eri_mo[:, :, i, i] - eri_mo[:, i, i, :]
    idx = np.ix_(active, active)
    h_act = h_eff[idx]
    eri_act = eri_mo[np.ix_(active, active, active, active)]
    return float(e_core), h_act, eri_act, active
