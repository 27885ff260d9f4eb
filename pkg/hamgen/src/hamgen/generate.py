"""Molecule specification to qubit-Hamiltonian JSON documents.

The emitted schema is exactly what the search toolkit's loader consumes:
name / num_qubits / terms / constraints / metadata. The identity term
absorbs nuclear repulsion and any frozen-core energy, so the minimum
eigenvalue of the document is the total electronic energy directly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .basis import (
    ANGSTROM_TO_BOHR,
    build_basis,
    nuclear_repulsion,
    total_nuclear_charge,
)
from .errors import BadSpec, HamgenError, SCFNonConvergence, ToolchainMissing
from .fci import fci_ground_energy
from .integrals import eri_tensor, kinetic_matrix, nuclear_matrix, overlap_matrix
from .mapping import (
    assert_real,
    fermionic_hamiltonian,
    number_operator,
    op_cleanup,
    parity_transform,
    pauli_label,
    sz_operator,
    two_qubit_reduce,
)
from .scf import active_space, ao_to_mo, rhf

DEFAULT_CONSTRAINT_WEIGHT = 10.0


@dataclass
class MoleculeSpec:
    geometry: list  # [(symbol, (x, y, z))] in Angstrom
    basis: str = "STO-3G"
    mapping: str = "parity"
    two_qubit_reduction: bool = True
    frozen_orbitals: list = field(default_factory=list)
    removed_orbitals: object = field(default_factory=list)  # indices or "pi"
    charge: int = 0
    multiplicity: int = 1
    name: str = ""
    constraint_weight: float = DEFAULT_CONSTRAINT_WEIGHT

    def __post_init__(self):
        if not self.geometry:
            raise BadSpec("geometry must be non-empty")
        if self.multiplicity < 1:
            raise BadSpec("multiplicity must be >= 1")
        if self.basis.upper() != "STO-3G":
            raise ToolchainMissing(f"basis {self.basis!r} is not built in")
        if self.mapping not in ("parity", "jordan_wigner"):
            raise BadSpec(f"unknown mapping {self.mapping!r}")
        if self.two_qubit_reduction and self.mapping != "parity":
            raise BadSpec("two-qubit reduction requires the parity mapping")


GEOMETRY_TEMPLATES = {
    "H2": lambda r: [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, r))],
    "LiH": lambda r: [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, r))],
    "H6": lambda r: [("H", (0.0, 0.0, i * r)) for i in range(6)],
}


def molecule_geometry(molecule: str, bond_length: float):
    try:
        template = GEOMETRY_TEMPLATES[molecule]
    except KeyError:
        raise ToolchainMissing(
            f"no geometry template for {molecule!r}; pass explicit geometry"
        ) from None
    return template(bond_length)


def _electron_structure(spec: MoleculeSpec, atoms_bohr):
    neutral = total_nuclear_charge(atoms_bohr)
    if neutral % 2:
        raise BadSpec("open-shell neutral molecules are not supported by the RHF core")
    n_elec = neutral - spec.charge
    if n_elec < 0:
        raise BadSpec("charge strips more electrons than the molecule has")
    return neutral, n_elec


def _sector(n_active_elec: int, multiplicity: int):
    twice_sz = multiplicity - 1
    if (n_active_elec + twice_sz) % 2:
        raise BadSpec(
            f"multiplicity {multiplicity} is impossible for {n_active_elec} electrons"
        )
    n_alpha = (n_active_elec + twice_sz) // 2
    n_beta = n_active_elec - n_alpha
    if n_beta < 0:
        raise BadSpec("multiplicity exceeds the electron count")
    return n_alpha, n_beta


def pi_virtual_orbitals(C: np.ndarray, basis, occupied: int):
    """Virtual MOs living purely on p_x/p_y functions (symmetry-isolated).

    Convenience for linear molecules: these never mix with the sigma
    system and are the natural orbitals to drop for a compact register.
    """
    pxy = [
        i
        for i, bf in enumerate(basis)
        if bf.lmn in ((1, 0, 0), (0, 1, 0))
    ]
    out = []
    for mo in range(occupied, C.shape[1]):
        weight = np.sum(C[pxy, mo] ** 2) / np.sum(C[:, mo] ** 2)
        if weight > 0.999:
            out.append(mo)
    return out


def build_problem(spec: MoleculeSpec):
    """Run the electronic-structure pipeline; returns the reduced qubit data."""
    atoms = [
        (sym, tuple(ANGSTROM_TO_BOHR * np.asarray(xyz, dtype=float)))
        for sym, xyz in spec.geometry
    ]
    basis = build_basis(atoms)
    neutral, n_elec = _electron_structure(spec, atoms)

    S = overlap_matrix(basis)
    T = kinetic_matrix(basis)
    V = nuclear_matrix(basis, atoms)
    eri = eri_tensor(basis)
    e_nuc = nuclear_repulsion(atoms)

    # Orbitals always come from the neutral closed-shell problem; charge
    # only moves the sector targets (exact per-sector energies do not
    # depend on the orbital basis over the full active space).
    e_scf, C, eps = rhf(S, T + V, eri, neutral)

    h_mo, eri_mo = ao_to_mo(T + V, eri, C)
    occupied = neutral // 2
    frozen = list(spec.frozen_orbitals)
    if spec.removed_orbitals == "pi":
        removed = pi_virtual_orbitals(C, basis, occupied)
    else:
        removed = list(spec.removed_orbitals)
    for i in frozen:
        if i >= occupied:
            raise BadSpec(f"frozen orbital {i} is not doubly occupied")
    for i in removed:
        if i < occupied:
            raise BadSpec(f"removed orbital {i} is occupied")
    e_core, h_act, eri_act, active = active_space(h_mo, eri_mo, frozen, removed)

    n_active_elec = n_elec - 2 * len(frozen)
    if n_active_elec < 0:
        raise BadSpec("frozen orbitals hold more electrons than available")
    n_alpha, n_beta = _sector(n_active_elec, spec.multiplicity)

    m = len(active)
    M = 2 * m
    op = fermionic_hamiltonian(h_act, eri_act, e_nuc + e_core)
    n_op = number_operator(M)
    sz_op = sz_operator(M)
    if spec.mapping == "parity":
        op = parity_transform(op, M)
        n_op = parity_transform(n_op, M)
        sz_op = parity_transform(sz_op, M)
    num_qubits = M
    if spec.two_qubit_reduction:
        op = two_qubit_reduce(op, M, n_alpha, n_active_elec)
        n_op = two_qubit_reduce(n_op, M, n_alpha, n_active_elec)
        sz_op = two_qubit_reduce(sz_op, M, n_alpha, n_active_elec)
        num_qubits = M - 2

    return {
        "op": assert_real(op_cleanup(op)),
        "number_op": assert_real(op_cleanup(n_op)),
        "sz_op": assert_real(op_cleanup(sz_op)),
        "num_qubits": num_qubits,
        "n_alpha": n_alpha,
        "n_beta": n_beta,
        "n_active_elec": n_active_elec,
        "active": active,
        "frozen": frozen,
        "removed": removed,
        "e_nuc": e_nuc,
        "e_core": e_core,
        "e_scf_total": e_scf + e_nuc,
        "h_act": h_act,
        "eri_act": eri_act,
        "atoms_bohr": atoms,
        "neutral_electrons": neutral,
    }


def _terms_json(op: dict, n: int):
    items = sorted(op.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    return [
        {"pauli": pauli_label(x, z, n), "coeff": float(c)} for (x, z), c in items
    ]


def _constraint_json(name: str, op: dict, n: int, target: float, weight: float):
    """Constraint entry, or None when the observable is constant.

    Symmetry reduction can collapse an observable to c*I (the register
    only holds the requested sector); such constraints are vacuous and
    dropped, after checking the constant really is the target.
    """
    nontrivial = {k: c for k, c in op.items() if k != (0, 0)}
    if not nontrivial:
        constant = float(op.get((0, 0), 0.0))
        if abs(constant - target) > 1e-9:
            raise BadSpec(
                f"{name} observable reduced to {constant}, but the sector "
                f"target is {target}"
            )
        return None
    return {
        "name": name,
        "terms": _terms_json(op, n),
        "target": float(target),
        "weight": weight,
    }


def generate(spec: MoleculeSpec, out_path=None, extra_metadata=None) -> dict:
    """Build the Hamiltonian document (and write it when a path is given)."""
    problem = build_problem(spec)
    n = problem["num_qubits"]
    sz_target = (spec.multiplicity - 1) / 2.0
    constraints = [
        c
        for c in (
            _constraint_json(
                "electron_count",
                problem["number_op"],
                n,
                float(problem["n_active_elec"]),
                spec.constraint_weight,
            ),
            _constraint_json(
                "spin_z", problem["sz_op"], n, sz_target, spec.constraint_weight
            ),
        )
        if c is not None
    ]
    doc = {
        "name": spec.name or "molecule",
        "num_qubits": n,
        "terms": _terms_json(problem["op"], n),
        "constraints": constraints,
        "metadata": {
            "generator": "hamgen",
            "basis": "STO-3G",
            "mapping": spec.mapping,
            "two_qubit_reduction": spec.two_qubit_reduction,
            "geometry_angstrom": [
                [sym, list(map(float, xyz))] for sym, xyz in spec.geometry
            ],
            "charge": spec.charge,
            "multiplicity": spec.multiplicity,
            "n_electrons": problem["n_active_elec"],
            "sector": {
                "n_alpha": problem["n_alpha"],
                "n_beta": problem["n_beta"],
                "alpha_parity": -1 if problem["n_alpha"] % 2 else 1,
                "total_parity": -1 if problem["n_active_elec"] % 2 else 1,
            },
            "frozen_orbitals": problem["frozen"],
            "removed_orbitals": problem["removed"],
            "active_orbitals": problem["active"],
            "nuclear_repulsion": problem["e_nuc"],
            "core_energy": problem["e_core"],
            "scf_total_energy": problem["e_scf_total"],
        },
    }
    if extra_metadata:
        doc["metadata"].update(extra_metadata)
    if out_path is not None:
        Path(out_path).write_text(json.dumps(doc, indent=2) + "\n")
    return doc


def reference_fci_energy(spec: MoleculeSpec) -> float:
    """Determinant-FCI total energy for the spec's sector (the oracle)."""
    problem = build_problem(spec)
    e_active = fci_ground_energy(
        problem["h_act"], problem["eri_act"], problem["n_alpha"], problem["n_beta"]
    )
    return e_active + problem["e_nuc"] + problem["e_core"]


def sweep(
    molecule: str,
    bond_lengths,
    out_dir,
    charge: int = 0,
    multiplicity: int = 1,
    frozen_orbitals=(),
    removed_orbitals=(),
    mapping: str = "parity",
    two_qubit_reduction: bool = True,
    constraint_weight: float = DEFAULT_CONSTRAINT_WEIGHT,
):
    """Generate one file per bond length; failures are reported per point."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    results = []
    for r in bond_lengths:
        spec = MoleculeSpec(
            geometry=molecule_geometry(molecule, r),
            charge=charge,
            multiplicity=multiplicity,
            frozen_orbitals=list(frozen_orbitals),
            removed_orbitals=list(removed_orbitals),
            mapping=mapping,
            two_qubit_reduction=two_qubit_reduction,
            name=f"{molecule}_r{r:g}",
            constraint_weight=constraint_weight,
        )
        path = out_dir / f"{molecule}_r{r:g}.json"
        try:
            generate(spec, path, extra_metadata={"bond_length": float(r)})
            results.append((r, str(path), None))
        except (HamgenError, SCFNonConvergence) as e:
            results.append((r, None, str(e)))
    return results
