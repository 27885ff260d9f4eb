"""Eighth-turn extension: a few non-Clifford angles on top of the Clifford grid.

Slots widen from quarter turns (indices 0..3) to eighth turns (0..7);
odd indices are the non-Clifford points, and at most ``k`` of them may
be odd at once. Evaluation runs on a dense statevector (capped width),
so the Clifford subset must agree with the tableau path to float noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _dense
from .ansatz import AnsatzTemplate, ParameterAssignment
from .errors import (
    ImaginaryResidue,
    IndexOutOfAlphabet,
    LengthMismatch,
    SpaceExhausted,
    SpaceTooLarge,
    TooManyQubits,
)
from .objective import EnergyRecord
from .pauli import Hamiltonian
from .search import (
    GreedySurrogateEngine,
    SearchConfig,
    SearchTrace,
    bo_search,
    resolve_warmup,
)

DENSE_QUBIT_CAP = 16
DEFAULT_EXTENDED_CAP = 1 << 20
IMAG_TOL = 1e-10


@dataclass(frozen=True)
class ExtendedAssignment:
    """Eighth-turn indices, one per slot; odd entries are non-Clifford."""

    indices: tuple[int, ...]
    k_budget: int

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(v) for v in self.indices))
        for v in self.indices:
            if not 0 <= v <= 7:
                raise IndexOutOfAlphabet(f"extended slot value {v} outside 0..7")
        if self.odd_count > self.k_budget:
            raise ValueError(
                f"{self.odd_count} non-Clifford slots exceed budget {self.k_budget}"
            )

    @property
    def odd_count(self) -> int:
        return sum(v & 1 for v in self.indices)

    @classmethod
    def from_quarter(cls, a: ParameterAssignment, k_budget: int = 0) -> "ExtendedAssignment":
        return cls(tuple(2 * v for v in a.indices), k_budget)


def bind_extended(t: AnsatzTemplate, a: ExtendedAssignment):
    """(kind, qubit-or-pair, eighth-turns) instructions in execution order."""
    if len(a.indices) != t.num_slots:
        raise LengthMismatch(
            f"assignment has {len(a.indices)} entries, template has {t.num_slots} slots"
        )
    ops = []
    pos = 0
    for layer in range(t.reps + 1):
        for q in range(t.n):
            for kind in ("RY", "RZ"):
                v = a.indices[pos]
                pos += 1
                if v:
                    ops.append((kind, q, v))
        if layer < t.reps:
            for c, tq in t.entangler:
                ops.append(("CX", (c, tq), None))
    return ops


def statevector(t: AnsatzTemplate, a: ExtendedAssignment) -> np.ndarray:
    psi = _dense.zero_statevector(t.n)
    for kind, q, v in bind_extended(t, a):
        if kind == "CX":
            psi = _dense.apply_cx(psi, q[0], q[1])
        else:
            psi = _dense.apply_rotation(psi, kind, q, v * math.pi / 4)
    return psi


def dense_eval(t: AnsatzTemplate, a: ExtendedAssignment, h: Hamiltonian) -> EnergyRecord:
    """Full statevector evaluation of one extended assignment."""
    if h.n != t.n:
        raise ValueError(f"Hamiltonian width {h.n} != template width {t.n}")
    if t.n > DENSE_QUBIT_CAP:
        raise TooManyQubits(f"dense evaluation caps at {DENSE_QUBIT_CAP} qubits")
    psi = statevector(t, a)

    def observable(terms) -> float:
        val = 0.0 + 0.0j
        for term in terms:
            val += term.coeff * _dense.pauli_expectation(psi, term.pauli)
        if abs(val.imag) > IMAG_TOL:
            raise ImaginaryResidue(f"imaginary residue {val.imag:.3e}")
        return val.real

    raw = observable(h.terms)
    penalty = 0.0
    values = []
    for c in h.constraints:
        v = observable(c.observable)
        values.append(v)
        penalty += c.weight * (v - c.target) ** 2
    return EnergyRecord(raw, penalty, raw + penalty, tuple(values))


def extended_space_size(p: int, k: int) -> int:
    """Number of eighth-turn points with at most k odd slots."""
    return 4**p * sum(math.comb(p, j) for j in range(min(k, p) + 1))


class _ExtendedEvaluator:
    """Active-slot mapping for the extended alphabet."""

    def __init__(self, t, h, k, active_slots, base):
        if h.n != t.n:
            raise ValueError(f"Hamiltonian width {h.n} != template width {t.n}")
        if t.n > DENSE_QUBIT_CAP:
            raise TooManyQubits(f"dense evaluation caps at {DENSE_QUBIT_CAP} qubits")
        self.template = t
        self.hamiltonian = h
        self.k = k
        if active_slots is None:
            active_slots = range(t.num_slots)
        self.active = tuple(active_slots)
        if not self.active:
            raise ValueError("need at least one active slot")
        if any(a >= b for a, b in zip(self.active, self.active[1:])):
            raise ValueError("active slots must be strictly ascending")
        base_idx = base.indices if base is not None else (0,) * t.num_slots
        # frozen slots stay on the Clifford grid: quarter turns become even
        self.base_ext = tuple(2 * v for v in base_idx)

    @property
    def dims(self) -> int:
        return len(self.active)

    @property
    def space_size(self) -> int:
        return extended_space_size(self.dims, self.k)

    def full_assignment(self, sub) -> ExtendedAssignment:
        idx = list(self.base_ext)
        for slot, v in zip(self.active, sub):
            idx[slot] = v
        return ExtendedAssignment(tuple(idx), self.k)

    def evaluate(self, sub):
        a = self.full_assignment(sub)
        return a, dense_eval(self.template, a, self.hamiltonian)

    def feasible(self, sub) -> bool:
        return sum(v & 1 for v in sub) <= self.k


MATRIX_PATH_QUBIT_CAP = 6


def exhaustive_extended(
    t: AnsatzTemplate,
    h: Hamiltonian,
    k: int,
    cap: int = DEFAULT_EXTENDED_CAP,
    active_slots=None,
    base: ParameterAssignment | None = None,
    keep_entries: bool = True,
) -> SearchTrace:
    """Enumerate the whole eighth-turn grid with at most k odd slots.

    At small widths the enumeration shares statevector prefixes down the
    slot tree and scores leaves against precomputed observable matrices;
    the result is identical to evaluating ``dense_eval`` at every point.
    """
    ev = _ExtendedEvaluator(t, h, k, active_slots, base)
    if ev.space_size > cap:
        raise SpaceTooLarge(ev.space_size, cap)
    trace = SearchTrace("exhaustive-kt", space_size=ev.space_size, k=k)
    p = ev.dims
    sub = [0] * p

    def record(rec):
        if keep_entries:
            a = ev.full_assignment(tuple(sub))
            trace.record_eval(a, rec, odd_slots=a.odd_count)
        else:
            trace.evaluations_used += 1
            if trace.best_record is None or rec.total < trace.best_record.total:
                trace.best_record = rec
                trace.best_assignment = ev.full_assignment(tuple(sub))

    if t.n <= MATRIX_PATH_QUBIT_CAP:
        _exhaustive_matrix_path(ev, k, sub, record)
    else:
        def descend(d, odd_left):
            if d == p:
                _, rec = ev.evaluate(tuple(sub))
                record(rec)
                return
            for v in range(8):
                if v & 1 and odd_left == 0:
                    continue
                sub[d] = v
                descend(d + 1, odd_left - (v & 1))
            sub[d] = 0

        descend(0, k)
    return trace


def _exhaustive_matrix_path(ev: "_ExtendedEvaluator", k: int, sub, record):
    """Prefix-sharing enumeration with full-space gate matrices."""
    from .baselines import hamiltonian_matrix

    t = ev.template
    h = ev.hamiltonian
    n = t.n
    dim = 1 << n

    def embed_1q(u, q):
        m = np.eye(1, dtype=np.complex128)
        for j in reversed(range(n)):
            m = np.kron(m, u if j == q else np.eye(2))
        return m

    def cx_matrix(c, tq):
        idx = np.arange(dim)
        perm = idx ^ (((idx >> c) & 1) << tq)
        return np.eye(dim, dtype=np.complex128)[perm]

    rot = {"RY": _dense.ry_matrix, "RZ": _dense.rz_matrix}

    # execution stream relative to the active slots (mirrors bind_extended)
    active_set = set(ev.active)
    segments: list[np.ndarray | None] = [None]
    branch_mats: list[list[np.ndarray]] = []

    def push_fixed(mat):
        segments[-1] = mat if segments[-1] is None else mat @ segments[-1]

    pos = 0
    for layer in range(t.reps + 1):
        for q in range(t.n):
            for kind in ("RY", "RZ"):
                if pos in active_set:
                    branch_mats.append(
                        [embed_1q(rot[kind](v * math.pi / 4), q) for v in range(8)]
                    )
                    segments.append(None)
                else:
                    v = ev.base_ext[pos]
                    if v:
                        push_fixed(embed_1q(rot[kind](v * math.pi / 4), q))
                pos += 1
        if layer < t.reps:
            for c, tq in t.entangler:
                push_fixed(cx_matrix(c, tq))

    h_mat = hamiltonian_matrix(h)
    cons = [
        (c.weight, c.target, hamiltonian_matrix(Hamiltonian(n, c.observable)))
        for c in h.constraints
    ]

    def leaf(psi):
        val = complex(np.vdot(psi, h_mat @ psi))
        if abs(val.imag) > IMAG_TOL:
            raise ImaginaryResidue(f"imaginary residue {val.imag:.3e}")
        raw = val.real
        penalty = 0.0
        values = []
        for weight, target, mat in cons:
            cv = complex(np.vdot(psi, mat @ psi))
            if abs(cv.imag) > IMAG_TOL:
                raise ImaginaryResidue(f"imaginary residue {cv.imag:.3e}")
            values.append(cv.real)
            penalty += weight * (cv.real - target) ** 2
        record(EnergyRecord(raw, penalty, raw + penalty, tuple(values)))

    p = ev.dims

    def descend(d, psi, odd_left):
        if d == p:
            leaf(psi)
            return
        mats = branch_mats[d]
        tail = segments[d + 1]
        for v in range(8):
            if v & 1 and odd_left == 0:
                continue
            child = psi if v == 0 else mats[v] @ psi
            if tail is not None:
                child = tail @ child
            sub[d] = v
            descend(d + 1, child, odd_left - (v & 1))
        sub[d] = 0

    psi0 = _dense.zero_statevector(n)
    if segments[0] is not None:
        psi0 = segments[0] @ psi0
    descend(0, psi0, k)


def kt_search(
    t: AnsatzTemplate,
    h: Hamiltonian,
    k: int,
    config: SearchConfig,
    active_slots=None,
    base: ParameterAssignment | None = None,
) -> SearchTrace:
    """Guided search over the extended alphabet with the odd-slot budget.

    With k = 0 the extended grid is the quarter-turn grid (indices halve),
    so the search reduces to the stabilizer-path bo_search outright.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return bo_search(t, h, config, active_slots, base)

    ev = _ExtendedEvaluator(t, h, k, active_slots, base)
    if config.budget > ev.space_size:
        raise SpaceExhausted(
            f"budget {config.budget} exceeds the {ev.space_size}-point space"
        )
    warmup = resolve_warmup(config, ev.space_size)
    trace = SearchTrace(
        "bo-kt", space_size=ev.space_size, seed=config.seed, warmup_used=warmup, k=k
    )
    rng = np.random.default_rng(config.seed)
    seen: set = set()
    history: list[tuple[int, ...]] = []

    def draw():
        while True:
            cand = [2 * int(v) for v in rng.integers(0, 4, ev.dims)]
            t_count = int(rng.integers(0, k + 1))
            if t_count:
                slots = rng.choice(ev.dims, size=t_count, replace=False)
                for s in slots:
                    cand[s] += 1
            cand = tuple(cand)
            if cand not in seen:
                return cand

    for _ in range(warmup):
        sub = draw()
        seen.add(sub)
        history.append(sub)
        a, rec = ev.evaluate(sub)
        trace.record_eval(a, rec, odd_slots=a.odd_count)

    def sample_feasible():
        cand = [2 * int(v) for v in rng.integers(0, 4, ev.dims)]
        t_count = int(rng.integers(0, k + 1))
        if t_count:
            for s in rng.choice(ev.dims, size=t_count, replace=False):
                cand[s] += 1
        return tuple(cand)

    engine = GreedySurrogateEngine(
        rng=rng,
        dims=ev.dims,
        alphabet=8,
        pool_size=config.pool_size,
        trees=config.trees,
        feasible=ev.feasible,
        sampler=sample_feasible,
        space_size=ev.space_size,
    )
    last_best = trace.best_record.total
    last_improve_iter = trace.iterations_to_best
    while trace.evaluations_used < config.budget:
        if config.stop_on_stagnation is not None:
            window, _ = config.stop_on_stagnation
            if trace.evaluations_used - last_improve_iter >= window:
                break
        totals = [e.record.total for e in trace.entries]
        sub = engine.propose(history, totals, seen)
        if sub is None:
            raise SpaceExhausted("no unevaluated feasible assignment remains")
        seen.add(sub)
        history.append(sub)
        a, rec = ev.evaluate(sub)
        trace.record_eval(a, rec, odd_slots=a.odd_count)
        if rec.total < last_best - (
            config.stop_on_stagnation[1] if config.stop_on_stagnation else 0.0
        ):
            last_improve_iter = trace.evaluations_used
        last_best = min(last_best, rec.total)
    return trace
