"""Pauli algebra and Hamiltonian ingestion tests."""

import itertools
import json

import numpy as np
import pytest

from cliffinit.errors import (
    BadChar,
    BadLength,
    InconsistentQubitCount,
    NonFiniteCoefficient,
    SchemaError,
    SizeMismatch,
)
from cliffinit.pauli import (
    Hamiltonian,
    PauliString,
    PauliTerm,
    commutes,
    load_hamiltonian,
    mul,
    parse_pauli,
)

from oracles import label_matrix


def mat(p: PauliString) -> np.ndarray:
    return (1j) ** p.phase * label_matrix(p.label())


class TestParse:
    def test_izzi(self):
        p = parse_pauli("IZZI", 4)
        assert (p.x, p.z, p.phase) == (0b0000, 0b0110, 0)

    def test_single_y_stored_phase_free(self):
        p = parse_pauli("Y", 1)
        assert (p.x, p.z, p.phase) == (1, 1, 0)

    def test_xyxy(self):
        p = parse_pauli("XYXY", 4)
        assert (p.x, p.z, p.phase) == (0b1111, 0b1010, 0)

    def test_bad_length(self):
        with pytest.raises(BadLength):
            parse_pauli("XX", 3)

    def test_bad_char(self):
        with pytest.raises(BadChar):
            parse_pauli("XQ", 2)

    def test_roundtrip_exhaustive_n3(self):
        for chars in itertools.product("IXYZ", repeat=3):
            label = "".join(chars)
            assert parse_pauli(label, 3).label() == label

    def test_identity(self):
        p = PauliString.identity(5)
        assert p.label() == "IIIII" and p.phase == 0


class TestMul:
    def test_x_times_y_is_i_z(self):
        c = mul(parse_pauli("X", 1), parse_pauli("Y", 1))
        assert c.label() == "Z" and c.phase == 1

    def test_z_squared_is_identity(self):
        c = mul(parse_pauli("Z", 1), parse_pauli("Z", 1))
        assert c.label() == "I" and c.phase == 0

    def test_xz_times_zx(self):
        # Frozen from the 4x4 matrix oracle: (X@Z)(Z@X) = (-iY)(x)(+iY) = +YY.
        a, b = parse_pauli("XZ", 2), parse_pauli("ZX", 2)
        c = mul(a, b)
        assert np.allclose(mat(a) @ mat(b), mat(c))
        assert c.label() == "YY" and c.phase == 0

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            mul(parse_pauli("X", 1), parse_pauli("XX", 2))

    def test_matches_matrix_product_exhaustive_n2(self):
        labels = ["".join(t) for t in itertools.product("IXYZ", repeat=2)]
        for la, lb in itertools.product(labels, repeat=2):
            a, b = parse_pauli(la, 2), parse_pauli(lb, 2)
            c = mul(a, b)
            assert np.allclose(mat(a) @ mat(b), mat(c)), (la, lb)

    def test_associative_and_identity_random(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            n = int(rng.integers(1, 7))
            ps = []
            for _ in range(3):
                x = int(rng.integers(0, 1 << n))
                z = int(rng.integers(0, 1 << n))
                ps.append(PauliString(n, x, z, int(rng.integers(0, 4))))
            a, b, c = ps
            assert mul(mul(a, b), c) == mul(a, mul(b, c))
            ident = PauliString.identity(n)
            assert mul(a, ident) == a
            assert mul(ident, a) == a


class TestCommutes:
    def test_xx_zz_commute(self):
        assert commutes(parse_pauli("XX", 2), parse_pauli("ZZ", 2))

    def test_xi_zi_anticommute(self):
        assert not commutes(parse_pauli("XI", 2), parse_pauli("ZI", 2))

    def test_izzi_xyxy(self):
        # Frozen from the 16x16 commutator oracle: [IZZI, XYXY] = 0.
        a, b = parse_pauli("IZZI", 4), parse_pauli("XYXY", 4)
        A, B = label_matrix("IZZI"), label_matrix("XYXY")
        assert np.allclose(A @ B, B @ A)
        assert commutes(a, b) is True

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            commutes(parse_pauli("X", 1), parse_pauli("XX", 2))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_agrees_with_dense_commutator_exhaustive(self, n):
        labels = ["".join(t) for t in itertools.product("IXYZ", repeat=n)]
        mats = np.stack([label_matrix(l) for l in labels])
        for i, la in enumerate(labels):
            ab = mats[i] @ mats
            ba = mats @ mats[i]
            dense = np.isclose(ab, ba).all(axis=(1, 2))
            for j, lb in enumerate(labels):
                assert commutes(parse_pauli(la, n), parse_pauli(lb, n)) == bool(
                    dense[j]
                ), (la, lb)


class TestHamiltonianLoad:
    def test_xx_microbenchmark_doc(self):
        h = load_hamiltonian({"num_qubits": 2, "terms": [{"pauli": "XX", "coeff": 1.0}]})
        assert h.n == 2
        assert len(h.terms) == 1
        assert h.terms[0].pauli.label() == "XX"
        assert h.terms[0].coeff == 1.0

    def test_duplicates_merge(self):
        h = load_hamiltonian(
            {
                "num_qubits": 2,
                "terms": [
                    {"pauli": "ZZ", "coeff": 0.5},
                    {"pauli": "ZZ", "coeff": 0.25},
                ],
            }
        )
        assert len(h.terms) == 1
        assert h.terms[0].coeff == pytest.approx(0.75)

    def test_inconsistent_qubit_count(self):
        with pytest.raises(InconsistentQubitCount):
            load_hamiltonian(
                {"num_qubits": 4, "terms": [{"pauli": "XXZ", "coeff": 1.0}]}
            )

    def test_nonfinite_coefficient(self):
        with pytest.raises(NonFiniteCoefficient):
            load_hamiltonian(
                {"num_qubits": 1, "terms": [{"pauli": "Z", "coeff": float("nan")}]}
            )

    def test_tiny_terms_pruned(self):
        h = load_hamiltonian(
            {
                "num_qubits": 1,
                "terms": [
                    {"pauli": "Z", "coeff": 1.0},
                    {"pauli": "X", "coeff": 1e-15},
                ],
            }
        )
        assert [t.pauli.label() for t in h.terms] == ["Z"]

    def test_cancelling_duplicates_pruned(self):
        h = load_hamiltonian(
            {
                "num_qubits": 1,
                "terms": [
                    {"pauli": "Z", "coeff": 1.0},
                    {"pauli": "X", "coeff": 0.5},
                    {"pauli": "X", "coeff": -0.5},
                ],
            }
        )
        assert [t.pauli.label() for t in h.terms] == ["Z"]

    def test_schema_errors(self):
        with pytest.raises(SchemaError):
            load_hamiltonian({"terms": []})
        with pytest.raises(SchemaError):
            load_hamiltonian({"num_qubits": 2})
        with pytest.raises(SchemaError):
            load_hamiltonian({"num_qubits": 2, "terms": [{"pauli": "XX"}]})
        with pytest.raises(SchemaError):
            load_hamiltonian("this is not json {")

    def test_constraints_parse(self):
        h = load_hamiltonian(
            {
                "num_qubits": 2,
                "terms": [{"pauli": "ZZ", "coeff": -1.0}],
                "constraints": [
                    {
                        "name": "number",
                        "terms": [
                            {"pauli": "ZI", "coeff": -0.5},
                            {"pauli": "IZ", "coeff": -0.5},
                            {"pauli": "II", "coeff": 1.0},
                        ],
                        "target": 1.0,
                        "weight": 5.0,
                    }
                ],
            }
        )
        assert len(h.constraints) == 1
        c = h.constraints[0]
        assert c.name == "number"
        assert c.target == 1.0 and c.weight == 5.0
        assert len(c.observable) == 3

    def test_json_text_and_file_inputs(self, tmp_path):
        doc = {"num_qubits": 1, "terms": [{"pauli": "Z", "coeff": -2.0}]}
        h1 = load_hamiltonian(json.dumps(doc))
        path = tmp_path / "h.json"
        path.write_text(json.dumps(doc))
        h2 = load_hamiltonian(path)
        assert h1.terms == h2.terms

    def test_document_roundtrip(self):
        doc = {
            "name": "pair",
            "num_qubits": 2,
            "terms": [
                {"pauli": "XX", "coeff": 0.25},
                {"pauli": "ZI", "coeff": -1.5},
            ],
            "constraints": [
                {
                    "name": "num",
                    "terms": [{"pauli": "ZI", "coeff": 1.0}],
                    "target": -1.0,
                    "weight": 2.0,
                }
            ],
            "metadata": {"bond_length": 0.74},
        }
        h = load_hamiltonian(doc)
        again = load_hamiltonian(h.to_document())
        assert again.terms == h.terms
        assert again.constraints == h.constraints
        assert again.metadata == h.metadata


class TestTypes:
    def test_term_rejects_phase(self):
        p = PauliString(1, 1, 1, 2)
        with pytest.raises(ValueError):
            PauliTerm(p, 1.0)

    def test_hamiltonian_width_check(self):
        with pytest.raises(InconsistentQubitCount):
            Hamiltonian(2, (PauliTerm(parse_pauli("Z", 1), 1.0),))

    def test_weight_and_diagonal(self):
        p = parse_pauli("IZXY", 4)
        assert p.weight == 3
        assert not p.is_diagonal
        assert parse_pauli("IZZI", 4).is_diagonal
