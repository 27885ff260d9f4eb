"""Energy evaluation of bound assignments: exact, noise-free, one pass per term.

Each Pauli term is evaluated exactly once on the stabilizer state (no
sampling; stabilizer expectations are exact). Constraint observables are
measured on the same state and folded in as quadratic penalties.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ansatz import AnsatzTemplate, ParameterAssignment, bind
from .pauli import ConstraintSpec, Hamiltonian, PauliTerm
from .stabilizer import StabilizerTableau, apply_circuit, expectation, zero_state

__all__ = [
    "ConstraintSpec",
    "EnergyRecord",
    "evaluate",
    "term_breakdown",
    "prepare_state",
    "constraint_penalty",
]


@dataclass(frozen=True)
class EnergyRecord:
    """Objective value split into raw energy and constraint penalty."""

    raw_energy: float
    penalty: float
    total: float
    constraint_values: tuple[float, ...] = ()


def prepare_state(t: AnsatzTemplate, a: ParameterAssignment) -> StabilizerTableau:
    """Stabilizer state of the bound circuit applied to |0...0>."""
    return apply_circuit(zero_state(t.n), bind(t, a))


def observable_expectation(state: StabilizerTableau, terms) -> float:
    """Expectation of a Pauli-sum observable; may be fractional."""
    return sum(term.coeff * expectation(state, term.pauli) for term in terms)


def constraint_penalty(state: StabilizerTableau, constraints) -> tuple[float, tuple[float, ...]]:
    values = []
    penalty = 0.0
    for c in constraints:
        v = observable_expectation(state, c.observable)
        values.append(v)
        penalty += c.weight * (v - c.target) ** 2
    return penalty, tuple(values)


def evaluate(h: Hamiltonian, t: AnsatzTemplate, a: ParameterAssignment) -> EnergyRecord:
    """Objective value of one assignment: sum of c_i * <P_i> plus penalties."""
    state = prepare_state(t, a)
    raw = 0.0
    for term in h.terms:
        raw += term.coeff * expectation(state, term.pauli)
    penalty, values = constraint_penalty(state, h.constraints)
    return EnergyRecord(raw, penalty, raw + penalty, values)


def term_breakdown(
    h: Hamiltonian, t: AnsatzTemplate, a: ParameterAssignment
) -> list[tuple[PauliTerm, int]]:
    """Per-term expectations on the bound state, in Hamiltonian term order."""
    state = prepare_state(t, a)
    return [(term, expectation(state, term.pauli)) for term in h.terms]
