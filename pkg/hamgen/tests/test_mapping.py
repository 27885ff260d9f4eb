"""Fermion-to-qubit mapping tests against dense matrices."""

import itertools

import numpy as np
import pytest

from hamgen.mapping import (
    fermionic_hamiltonian,
    ladder,
    number_operator,
    op_add,
    op_cleanup,
    op_identity,
    op_mul,
    parity_transform,
    pauli_label,
    sz_operator,
    to_matrix,
    two_qubit_reduce,
)


def dense(op, M):
    return to_matrix(op, M)


class TestPauliAlgebra:
    def test_labels(self):
        assert pauli_label(0b01, 0b10, 2) == "XZ"
        assert pauli_label(0b11, 0b01, 2) == "YX"

    def test_mul_matches_matrices(self):
        rng = np.random.default_rng(3)
        for _ in range(40):
            n = 2
            a = {(int(rng.integers(0, 4)), int(rng.integers(0, 4))): complex(rng.normal())}
            b = {(int(rng.integers(0, 4)), int(rng.integers(0, 4))): complex(rng.normal())}
            c = op_mul(a, b)
            assert np.allclose(dense(c, n), dense(a, n) @ dense(b, n))


class TestLadderOperators:
    @pytest.mark.parametrize("M", [2, 3, 4])
    def test_canonical_anticommutation(self, M):
        creators = [dense(ladder(M, j, True), M) for j in range(M)]
        annihilators = [dense(ladder(M, j, False), M) for j in range(M)]
        for i in range(M):
            for j in range(M):
                acomm = annihilators[i] @ creators[j] + creators[j] @ annihilators[i]
                want = np.eye(1 << M) if i == j else 0.0
                assert np.allclose(acomm, want, atol=1e-12), (i, j)
                aa = annihilators[i] @ annihilators[j] + annihilators[j] @ annihilators[i]
                assert np.allclose(aa, 0.0, atol=1e-12)

    def test_number_operator_counts_bits(self):
        M = 3
        nmat = dense(number_operator(M), M)
        diag = np.diag(nmat).real
        for b in range(1 << M):
            assert diag[b] == pytest.approx(bin(b).count("1"))

    def test_adjoint_consistency(self):
        M = 3
        for j in range(M):
            assert np.allclose(
                dense(ladder(M, j, True), M),
                dense(ladder(M, j, False), M).conj().T,
            )

    def test_sz_blocks(self):
        M = 4  # 2 spatial orbitals: alpha qubits 0..1, beta 2..3
        sz = np.diag(dense(sz_operator(M), M)).real
        assert sz[0b0001] == pytest.approx(0.5)   # one alpha
        assert sz[0b0100] == pytest.approx(-0.5)  # one beta
        assert sz[0b0101] == pytest.approx(0.0)   # one of each


def prefix_permutation(M):
    """Permutation matrix of the occupation -> parity basis change."""
    dim = 1 << M
    P = np.zeros((dim, dim))
    for b in range(dim):
        t = 0
        acc = 0
        for j in range(M):
            acc ^= (b >> j) & 1
            t |= acc << j
        P[t, b] = 1.0
    return P


class TestParityTransform:
    @pytest.mark.parametrize("M", [2, 3, 4])
    def test_matches_explicit_basis_change(self, M):
        rng = np.random.default_rng(M)
        op = {}
        for _ in range(6):
            key = (int(rng.integers(0, 1 << M)), int(rng.integers(0, 1 << M)))
            op[key] = complex(rng.normal(), rng.normal())
        P = prefix_permutation(M)
        got = dense(parity_transform(op, M), M)
        want = P @ dense(op, M) @ P.T
        assert np.allclose(got, want, atol=1e-12)

    def test_number_operator_becomes_local_parity(self):
        # in the parity basis n_j = (I - Z_j Z_{j-1})/2; just check spectrum
        M = 4
        n_par = parity_transform(number_operator(M), M)
        eigs = np.linalg.eigvalsh(dense(n_par, M))
        assert np.allclose(sorted(set(np.round(eigs, 9))), [0, 1, 2, 3, 4])


class TestTwoQubitReduction:
    def test_h2_style_sector_spectrum(self):
        # toy 2-orbital Hamiltonian: spectrum of the reduced operator must
        # equal the full spectrum restricted to the matching parity sector
        rng = np.random.default_rng(11)
        m = 2
        M = 2 * m
        h1 = rng.normal(size=(m, m))
        h1 = (h1 + h1.T) / 2
        eri = rng.normal(size=(m, m, m, m)) * 0.1
        eri = eri + eri.transpose(1, 0, 2, 3)
        eri = eri + eri.transpose(0, 1, 3, 2)
        eri = eri + eri.transpose(2, 3, 0, 1)
        op = fermionic_hamiltonian(h1, eri, 0.3)
        full = dense(op, M)

        n_alpha, n_elec = 1, 2
        reduced = two_qubit_reduce(parity_transform(op, M), M, n_alpha, n_elec)
        red_eigs = np.linalg.eigvalsh(dense(reduced, M - 2))

        # project the full operator onto the fixed-parity subspace
        keep = []
        for b in range(1 << M):
            alpha_bits = b & ((1 << m) - 1)
            a_par = bin(alpha_bits).count("1") % 2
            t_par = bin(b).count("1") % 2
            if a_par == n_alpha % 2 and t_par == n_elec % 2:
                keep.append(b)
        sub = full[np.ix_(keep, keep)]
        sub_eigs = np.linalg.eigvalsh(sub)
        assert np.allclose(np.sort(red_eigs), np.sort(sub_eigs), atol=1e-10)

    def test_rejects_symmetry_breaking_terms(self):
        M = 4
        op = {(1 << (M - 1), 0): 1.0}  # X on the total-parity qubit
        with pytest.raises(ValueError):
            two_qubit_reduce(op, M, 1, 2)


class TestFermionicHamiltonian:
    def test_hermitian(self):
        rng = np.random.default_rng(17)
        m = 2
        h1 = rng.normal(size=(m, m))
        h1 = (h1 + h1.T) / 2
        eri = np.zeros((m, m, m, m))
        for idx in itertools.product(range(m), repeat=4):
            eri[idx] = rng.normal() * 0.05
        eri = eri + eri.transpose(1, 0, 2, 3)
        eri = eri + eri.transpose(0, 1, 3, 2)
        eri = eri + eri.transpose(2, 3, 0, 1)
        mat = dense(fermionic_hamiltonian(h1, eri, 0.0), 2 * m)
        assert np.allclose(mat, mat.conj().T, atol=1e-10)

    def test_commutes_with_number_and_sz(self):
        rng = np.random.default_rng(19)
        m = 2
        h1 = rng.normal(size=(m, m))
        h1 = (h1 + h1.T) / 2
        eri = rng.normal(size=(m, m, m, m)) * 0.1
        eri = eri + eri.transpose(1, 0, 2, 3)
        eri = eri + eri.transpose(0, 1, 3, 2)
        eri = eri + eri.transpose(2, 3, 0, 1)
        M = 2 * m
        H = dense(fermionic_hamiltonian(h1, eri, 0.0), M)
        for obs in (number_operator(M), sz_operator(M)):
            Omat = dense(obs, M)
            assert np.abs(H @ Omat - Omat @ H).max() < 1e-10
