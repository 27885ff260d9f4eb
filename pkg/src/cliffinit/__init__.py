"""Clifford-space search toolkit for initializing variational quantum algorithms.

The library simulates quarter-turn (Clifford) configurations of a
hardware-efficient ansatz in polynomial time via a stabilizer tableau,
searches the resulting discrete space (exhaustive / random / forest-guided
Bayesian optimization), and scores results against the operational
baselines: best computational basis state and exact diagonalization.
An eighth-turn extension admits a bounded number of non-Clifford angles
through a dense statevector path.
"""

__version__ = "0.1.0"

from .ansatz import (
    AnsatzTemplate,
    ParameterAssignment,
    bind,
    bitstring_assignment,
    build_su2,
)
from .baselines import (
    BaselineResult,
    chem_accurate,
    exact_ground,
    hf_search,
    recovered_correlation,
)
from .magic import ExtendedAssignment, dense_eval, exhaustive_extended, kt_search
from .objective import ConstraintSpec, EnergyRecord, evaluate, term_breakdown
from .pauli import (
    Hamiltonian,
    PauliString,
    PauliTerm,
    commutes,
    load_hamiltonian,
    mul,
    parse_pauli,
)
from .search import (
    SearchConfig,
    SearchTrace,
    SurrogateForest,
    bo_search,
    exhaustive,
    random_search,
)
from .stabilizer import (
    CliffordGate,
    StabilizerTableau,
    apply_circuit,
    apply_gate,
    check_symplectic,
    expectation,
    zero_state,
)

__all__ = [
    "AnsatzTemplate",
    "BaselineResult",
    "CliffordGate",
    "ConstraintSpec",
    "EnergyRecord",
    "ExtendedAssignment",
    "Hamiltonian",
    "ParameterAssignment",
    "PauliString",
    "PauliTerm",
    "SearchConfig",
    "SearchTrace",
    "StabilizerTableau",
    "SurrogateForest",
    "apply_circuit",
    "apply_gate",
    "bind",
    "bitstring_assignment",
    "bo_search",
    "build_su2",
    "check_symplectic",
    "chem_accurate",
    "commutes",
    "dense_eval",
    "evaluate",
    "exact_ground",
    "exhaustive",
    "exhaustive_extended",
    "expectation",
    "hf_search",
    "kt_search",
    "load_hamiltonian",
    "mul",
    "parse_pauli",
    "random_search",
    "recovered_correlation",
    "term_breakdown",
    "zero_state",
]
