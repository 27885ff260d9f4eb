"""Molecular integrals over contracted Cartesian Gaussians.

McMurchie-Davidson scheme: products of Gaussians expand into Hermite
Gaussians (E coefficients); Coulomb-type integrals contract Hermite
charge distributions against the Boys function (R tensor). Supports the
s and p angular momenta the built-in basis uses, and higher l untested.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import hyp1f1


def boys(n: int, x: float) -> float:
    return hyp1f1(n + 0.5, n + 1.5, -x) / (2.0 * n + 1.0)


def _hermite_e(i: int, j: int, t: int, Q: float, a: float, b: float) -> float:
    """Expansion coefficient of x^i x^j Gaussian product over Hermite x^t."""
    if i < 0 or j < 0 or t < 0 or t > i + j:
        return 0.0
    p = a + b
    q = a * b / p
    if i == j == t == 0:
        return math.exp(-q * Q * Q)
    if j == 0:
        return (
            _hermite_e(i - 1, j, t - 1, Q, a, b) / (2 * p)
            - (q * Q / a) * _hermite_e(i - 1, j, t, Q, a, b)
            + (t + 1) * _hermite_e(i - 1, j, t + 1, Q, a, b)
        )
    return (
        _hermite_e(i, j - 1, t - 1, Q, a, b) / (2 * p)
        + (q * Q / b) * _hermite_e(i, j - 1, t, Q, a, b)
        + (t + 1) * _hermite_e(i, j - 1, t + 1, Q, a, b)
    )


def _overlap_prim(a, lmn1, A, b, lmn2, B) -> float:
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    if min(l1, m1, n1, l2, m2, n2) < 0:
        return 0.0
    p = a + b
    s = (
        _hermite_e(l1, l2, 0, A[0] - B[0], a, b)
        * _hermite_e(m1, m2, 0, A[1] - B[1], a, b)
        * _hermite_e(n1, n2, 0, A[2] - B[2], a, b)
    )
    return s * (math.pi / p) ** 1.5


def _kinetic_prim(a, lmn1, A, b, lmn2, B) -> float:
    l2, m2, n2 = lmn2
    term0 = b * (2 * (l2 + m2 + n2) + 3) * _overlap_prim(a, lmn1, A, b, lmn2, B)
    term1 = -2.0 * b * b * (
        _overlap_prim(a, lmn1, A, b, (l2 + 2, m2, n2), B)
        + _overlap_prim(a, lmn1, A, b, (l2, m2 + 2, n2), B)
        + _overlap_prim(a, lmn1, A, b, (l2, m2, n2 + 2), B)
    )
    term2 = -0.5 * (
        l2 * (l2 - 1) * _overlap_prim(a, lmn1, A, b, (l2 - 2, m2, n2), B)
        + m2 * (m2 - 1) * _overlap_prim(a, lmn1, A, b, (l2, m2 - 2, n2), B)
        + n2 * (n2 - 1) * _overlap_prim(a, lmn1, A, b, (l2, m2, n2 - 2), B)
    )
    return term0 + term1 + term2


def _hermite_r(t: int, u: int, v: int, n: int, p: float, PC) -> float:
    if t == u == v == 0:
        r2 = PC[0] * PC[0] + PC[1] * PC[1] + PC[2] * PC[2]
        return (-2.0 * p) ** n * boys(n, p * r2)
    if t > 0:
        val = PC[0] * _hermite_r(t - 1, u, v, n + 1, p, PC)
        if t > 1:
            val += (t - 1) * _hermite_r(t - 2, u, v, n + 1, p, PC)
        return val
    if u > 0:
        val = PC[1] * _hermite_r(t, u - 1, v, n + 1, p, PC)
        if u > 1:
            val += (u - 1) * _hermite_r(t, u - 2, v, n + 1, p, PC)
        return val
    val = PC[2] * _hermite_r(t, u, v - 1, n + 1, p, PC)
    if v > 1:
        val += (v - 1) * _hermite_r(t, u, v - 2, n + 1, p, PC)
    return val


def _nuclear_prim(a, lmn1, A, b, lmn2, B, C) -> float:
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    p = a + b
    P = (a * A + b * B) / p
    PC = P - C
    val = 0.0
    for t in range(l1 + l2 + 1):
        et = _hermite_e(l1, l2, t, A[0] - B[0], a, b)
        if et == 0.0:
            continue
        for u in range(m1 + m2 + 1):
            eu = _hermite_e(m1, m2, u, A[1] - B[1], a, b)
            if eu == 0.0:
                continue
            for v in range(n1 + n2 + 1):
                ev = _hermite_e(n1, n2, v, A[2] - B[2], a, b)
                if ev == 0.0:
                    continue
                val += et * eu * ev * _hermite_r(t, u, v, 0, p, PC)
    return 2.0 * math.pi / p * val


def _eri_prim(a, lmn1, A, b, lmn2, B, c, lmn3, C, d, lmn4, D) -> float:
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    l3, m3, n3 = lmn3
    l4, m4, n4 = lmn4
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    P = (a * A + b * B) / p
    Q = (c * C + d * D) / q
    PQ = P - Q
    val = 0.0
    for t in range(l1 + l2 + 1):
        e1t = _hermite_e(l1, l2, t, A[0] - B[0], a, b)
        if e1t == 0.0:
            continue
        for u in range(m1 + m2 + 1):
            e1u = _hermite_e(m1, m2, u, A[1] - B[1], a, b)
            if e1u == 0.0:
                continue
            for v in range(n1 + n2 + 1):
                e1v = _hermite_e(n1, n2, v, A[2] - B[2], a, b)
                if e1v == 0.0:
                    continue
                e1 = e1t * e1u * e1v
                for tau in range(l3 + l4 + 1):
                    e2t = _hermite_e(l3, l4, tau, C[0] - D[0], c, d)
                    if e2t == 0.0:
                        continue
                    for nu in range(m3 + m4 + 1):
                        e2u = _hermite_e(m3, m4, nu, C[1] - D[1], c, d)
                        if e2u == 0.0:
                            continue
                        for phi in range(n3 + n4 + 1):
                            e2v = _hermite_e(n3, n4, phi, C[2] - D[2], c, d)
                            if e2v == 0.0:
                                continue
                            sign = -1.0 if (tau + nu + phi) % 2 else 1.0
                            val += (
                                e1 * e2t * e2u * e2v * sign
                                * _hermite_r(t + tau, u + nu, v + phi, 0, alpha, PQ)
                            )
    return val * 2.0 * math.pi**2.5 / (p * q * math.sqrt(p + q))


def _contract2(prim_fn, f1, f2, *extra) -> float:
    val = 0.0
    for a, ca in zip(f1.exponents, f1.coefficients):
        for b, cb in zip(f2.exponents, f2.coefficients):
            val += ca * cb * prim_fn(a, f1.lmn, f1.center, b, f2.lmn, f2.center, *extra)
    return val


def contracted_overlap(f1, f2) -> float:
    return _contract2(_overlap_prim, f1, f2)


def contracted_kinetic(f1, f2) -> float:
    return _contract2(_kinetic_prim, f1, f2)


def contracted_nuclear(f1, f2, C) -> float:
    return _contract2(_nuclear_prim, f1, f2, np.asarray(C, dtype=float))


def contracted_eri(f1, f2, f3, f4) -> float:
    val = 0.0
    for a, ca in zip(f1.exponents, f1.coefficients):
        for b, cb in zip(f2.exponents, f2.coefficients):
            for c, cc in zip(f3.exponents, f3.coefficients):
                for d, cd in zip(f4.exponents, f4.coefficients):
                    val += ca * cb * cc * cd * _eri_prim(
                        a, f1.lmn, f1.center,
                        b, f2.lmn, f2.center,
                        c, f3.lmn, f3.center,
                        d, f4.lmn, f4.center,
                    )
    return val


def overlap_matrix(basis) -> np.ndarray:
    n = len(basis)
    S = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            S[i, j] = S[j, i] = contracted_overlap(basis[i], basis[j])
    return S


def kinetic_matrix(basis) -> np.ndarray:
    n = len(basis)
    T = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            T[i, j] = T[j, i] = contracted_kinetic(basis[i], basis[j])
    return T


def nuclear_matrix(basis, atoms) -> np.ndarray:
    from .basis import ATOMIC_NUMBER

    n = len(basis)
    V = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            val = 0.0
            for symbol, center in atoms:
                val -= ATOMIC_NUMBER[symbol] * contracted_nuclear(
                    basis[i], basis[j], center
                )
            V[i, j] = V[j, i] = val
    return V


def eri_tensor(basis) -> np.ndarray:
    """(ij|kl) in chemist notation with 8-fold permutational symmetry."""
    n = len(basis)
    eri = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(i + 1):
            for k in range(n):
                for l in range(k + 1):
                    if (i * (i + 1)) // 2 + j < (k * (k + 1)) // 2 + l:
                        continue
                    val = contracted_eri(basis[i], basis[j], basis[k], basis[l])
                    for (p, q, r, s) in (
                        (i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
                        (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i),
                    ):
                        eri[p, q, r, s] = val
    return eri
