"""Molecular qubit-Hamiltonian generator (STO-3G, parity mapping)."""

__version__ = "0.1.0"

from .errors import BadSpec, HamgenError, SCFNonConvergence, ToolchainMissing
from .generate import (
    MoleculeSpec,
    build_problem,
    generate,
    molecule_geometry,
    reference_fci_energy,
    sweep,
)

__all__ = [
    "BadSpec",
    "HamgenError",
    "MoleculeSpec",
    "SCFNonConvergence",
    "ToolchainMissing",
    "build_problem",
    "generate",
    "molecule_geometry",
    "reference_fci_energy",
    "sweep",
]
