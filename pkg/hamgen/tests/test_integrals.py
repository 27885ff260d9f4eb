"""Integral engine tests:  literature anchors and exact symmetries."""

import numpy as np
import pytest

from hamgen.basis import ANGSTROM_TO_BOHR, build_basis, nuclear_repulsion
from hamgen.integrals import (
    boys,
    eri_tensor,
    kinetic_matrix,
    nuclear_matrix,
    overlap_matrix,
)


@pytest.fixture(scope="module")
def h2_at_1p4():
    # the classic two-center STO-3G testbed: H2 at R = 1.4 bohr
    atoms = [("H", np.zeros(3)), ("H", np.array([0.0, 0.0, 1.4]))]
    basis = build_basis(atoms)
    return atoms, basis


class TestBoys:
    def test_zero_argument_limit(self):
        for n in range(4):
            assert boys(n, 0.0) == pytest.approx(1.0 / (2 * n + 1))

    def test_large_argument_asymptotic(self):
        # F0(x) -> sqrt(pi/x)/2
        x = 50.0
        assert boys(0, x) == pytest.approx(0.5 * np.sqrt(np.pi / x), rel=1e-6)


class TestLiteratureAnchors:
    """Szabo & Ostlund's well-known H2/STO-3G numbers at R = 1.4 bohr."""

    def test_overlap(self, h2_at_1p4):
        _, basis = h2_at_1p4
        S = overlap_matrix(basis)
        assert S[0, 0] == pytest.approx(1.0, abs=1e-10)
        assert S[0, 1] == pytest.approx(0.6593, abs=2e-4)

    def test_kinetic(self, h2_at_1p4):
        _, basis = h2_at_1p4
        T = kinetic_matrix(basis)
        assert T[0, 0] == pytest.approx(0.7600, abs=2e-4)
        assert T[0, 1] == pytest.approx(0.2365, abs=2e-4)

    def test_nuclear(self, h2_at_1p4):
        atoms, basis = h2_at_1p4
        V = nuclear_matrix(basis, atoms)
        # attraction to both nuclei combined
        assert V[0, 0] == pytest.approx(-1.8804, abs=5e-4)

    def test_eri(self, h2_at_1p4):
        _, basis = h2_at_1p4
        eri = eri_tensor(basis)
        assert eri[0, 0, 0, 0] == pytest.approx(0.7746, abs=2e-4)
        assert eri[0, 0, 1, 1] == pytest.approx(0.5697, abs=2e-4)
        assert eri[1, 0, 1, 0] == pytest.approx(0.2970, abs=2e-4)

    def test_nuclear_repulsion(self, h2_at_1p4):
        atoms, _ = h2_at_1p4
        assert nuclear_repulsion(atoms) == pytest.approx(1.0 / 1.4)


class TestSymmetries:
    def test_matrices_symmetric(self):
        atoms = [("Li", np.zeros(3)), ("H", np.array([0.0, 0.0, 3.0]))]
        basis = build_basis(atoms)
        for mat in (overlap_matrix(basis), kinetic_matrix(basis),
                    nuclear_matrix(basis, atoms)):
            assert np.allclose(mat, mat.T, atol=1e-12)

    def test_eri_eightfold(self):
        atoms = [("Li", np.zeros(3)), ("H", np.array([0.0, 0.0, 3.0]))]
        basis = build_basis(atoms)
        eri = eri_tensor(basis)
        assert np.allclose(eri, eri.transpose(1, 0, 2, 3), atol=1e-12)
        assert np.allclose(eri, eri.transpose(0, 1, 3, 2), atol=1e-12)
        assert np.allclose(eri, eri.transpose(2, 3, 0, 1), atol=1e-12)

    def test_normalization_includes_p_functions(self):
        atoms = [("Li", np.zeros(3))]
        basis = build_basis(atoms)
        S = overlap_matrix(basis)
        assert np.allclose(np.diag(S), 1.0, atol=1e-10)
        assert len(basis) == 5  # 1s, 2s, 2px, 2py, 2pz

    def test_p_s_orthogonality_on_same_center(self):
        atoms = [("Li", np.zeros(3))]
        basis = build_basis(atoms)
        S = overlap_matrix(basis)
        # px/py/pz are odd about the center: zero overlap with s shells
        for p_idx in (2, 3, 4):
            assert abs(S[0, p_idx]) < 1e-12
            assert abs(S[1, p_idx]) < 1e-12
