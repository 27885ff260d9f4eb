"""Shared test utilities: random circuit generation and conversions."""

import numpy as np

from cliffinit.stabilizer import CliffordGate

GATE_POOL_1Q = ["H", "S", "SDG", "X", "Y", "Z", "RX", "RY", "RZ"]


def random_instructions(rng: np.random.Generator, n: int, depth: int):
    """Neutral (kind, qubits, quarter_turns) tuples for oracle and tableau."""
    out = []
    for _ in range(depth):
        if n >= 2 and rng.random() < 0.3:
            q = int(rng.integers(0, n - 1))
            out.append(("CX", (q, q + 1) if rng.random() < 0.5 else (q + 1, q), None))
            continue
        kind = GATE_POOL_1Q[int(rng.integers(0, len(GATE_POOL_1Q)))]
        q = int(rng.integers(0, n))
        k = int(rng.integers(0, 4)) if kind.startswith("R") else None
        out.append((kind, (q,), k))
    return out


def to_gates(instructions):
    return [CliffordGate(kind, qubits, k) for kind, qubits, k in instructions]


def planted_hamiltonian(t, a):
    """Hamiltonian whose unique ground state is the state bound from ``a``.

    Sums every nontrivial element of the state's stabilizer group with a
    coefficient that makes its expectation +1 there, negated: the planted
    state scores 1 - 2^n and any other stabilizer state scores
    1 - 2^n * overlap > that.
    """
    from cliffinit.objective import prepare_state
    from cliffinit.pauli import Hamiltonian, PauliString, PauliTerm, mul

    state = prepare_state(t, a)
    gens = state.stabilizers()
    n = t.n
    terms = []
    for r in range(1, 2**n):
        acc = None
        for i in range(n):
            if (r >> i) & 1:
                acc = gens[i] if acc is None else mul(acc, gens[i])
        sign = 1.0 if acc.phase == 0 else -1.0
        terms.append(PauliTerm(PauliString(n, acc.x, acc.z, 0), -sign))
    return Hamiltonian.from_terms(n, terms, name="planted")


def random_hamiltonian(rng: np.random.Generator, n: int, nterms: int, name="random"):
    """Random Pauli-sum Hamiltonian with unit-scale coefficients."""
    from cliffinit.pauli import Hamiltonian, PauliString, PauliTerm

    terms = {}
    while len(terms) < nterms:
        x = int(rng.integers(0, 1 << n))
        z = int(rng.integers(0, 1 << n))
        p = PauliString(n, x, z)
        if p not in terms:
            terms[p] = float(rng.normal())
    return Hamiltonian.from_terms(
        n, [PauliTerm(p, c) for p, c in terms.items()], name=name
    )
