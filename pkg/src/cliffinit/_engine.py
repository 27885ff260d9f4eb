"""Object-light evaluation engine behind the discrete searches.

Search loops evaluate tens of thousands of assignments; building gate
and Pauli objects per evaluation dominates the cost. This module
compiles a (template, Hamiltonian, active-slot) triple into flat tuples
of ints once, then runs the same tableau updates and sign accumulation
as :mod:`.stabilizer` on plain lists. Conformance of the two paths is
pinned by tests.

Exhaustive enumeration additionally shares circuit prefixes: slots are
visited in execution order, so sibling assignments reuse the tableau
computed up to the slot being varied.
"""

from __future__ import annotations

from .ansatz import AnsatzTemplate, ParameterAssignment
from .errors import InternalPhaseError
from .pauli import Hamiltonian

_OP_CX = 0
_OP_RY = 1
_OP_RZ = 2


def _rot_code(kind: str) -> int:
    return _OP_RY if kind == "RY" else _OP_RZ


class CompiledObjective:
    """Template + Hamiltonian lowered to int tuples for fast evaluation."""

    def __init__(
        self,
        t: AnsatzTemplate,
        h: Hamiltonian,
        active_slots: tuple[int, ...],
        base: tuple[int, ...],
    ):
        self.n = t.n
        self.terms = tuple((p.pauli.x, p.pauli.z, p.coeff) for p in h.terms)
        self.constraints = tuple(
            (c.weight, c.target, tuple((p.pauli.x, p.pauli.z, p.coeff) for p in c.observable))
        for c in h.constraints
        )

        # Execution stream: active slots become branch points, everything
        # else (frozen nonzero rotations, CX ladders) becomes fixed ops.
        active_set = set(active_slots)
        segments: list[list[tuple]] = [[]]
        branch_kinds: list[tuple[int, int]] = []  # (rot opcode, qubit mask)
        pos = 0
        for layer in range(t.reps + 1):
            for q in range(t.n):
                for kind in ("RY", "RZ"):
                    if pos in active_set:
                        branch_kinds.append((_rot_code(kind), 1 << q))
                        segments.append([])
                    else:
                        v = base[pos]
                        if v:
                            segments[-1].append((_rot_code(kind), 1 << q, v))
                    pos += 1
            if layer < t.reps:
                for c, tq in t.entangler:
                    segments[-1].append((_OP_CX, 1 << c, 1 << tq))
        self.segments = [tuple(s) for s in segments]  # len = len(active) + 1
        self.branches = tuple(branch_kinds)

    # ---- state plumbing ----

    def zero(self):
        n = self.n
        xs = [1 << j for j in range(n)] + [0] * n
        zs = [0] * n + [1 << j for j in range(n)]
        return xs, zs, [False] * (2 * n)

    def apply_ops(self, ops, state):
        xs, zs, negs = state
        two_n = 2 * self.n
        for op in ops:
            code = op[0]
            if code == _OP_CX:
                _, mc, mt = op
                for i in range(two_n):
                    x, z = xs[i], zs[i]
                    if x & mc:
                        if z & mt and bool(x & mt) == bool(z & mc):
                            negs[i] = not negs[i]
                        xs[i] = x ^ mt
                    if z & mt:
                        zs[i] = z ^ mc
            else:
                _, m, k = op
                self.apply_rot(code, m, k, state)

    def apply_rot(self, code, m, k, state):
        xs, zs, negs = state
        two_n = 2 * self.n
        if code == _OP_RY:
            if k == 2:
                for i in range(two_n):
                    if bool(xs[i] & m) != bool(zs[i] & m):
                        negs[i] = not negs[i]
            else:
                flip_on_x = k == 1  # quarter turn: X picks up the sign; inverse: Z does
                for i in range(two_n):
                    xb, zb = xs[i] & m, zs[i] & m
                    if bool(xb) != bool(zb):
                        if xb if flip_on_x else zb:
                            negs[i] = not negs[i]
                        xs[i] ^= m
                        zs[i] ^= m
        else:  # RZ family
            if k == 2:
                for i in range(two_n):
                    if xs[i] & m:
                        negs[i] = not negs[i]
            else:
                flip_on_y = k == 1  # S flips Y rows, S-dagger flips X rows
                for i in range(two_n):
                    xb = xs[i] & m
                    if xb:
                        zb = zs[i] & m
                        if (zb if flip_on_y else not zb):
                            negs[i] = not negs[i]
                        zs[i] ^= m


    # ---- measurement ----

    def expect(self, px, pz, state) -> int:
        xs, zs, negs = state
        n = self.n
        if px == 0 and pz == 0:
            return 1
        for i in range(n, 2 * n):
            if ((px & zs[i]).bit_count() + (pz & xs[i]).bit_count()) & 1:
                return 0
        ax = az = ph = 0
        first = True
        for i in range(n):
            if ((px & zs[i]).bit_count() + (pz & xs[i]).bit_count()) & 1:
                j = n + i
                rx, rz = xs[j], zs[j]
                rp = 2 if negs[j] else 0
                if first:
                    ax, az, ph = rx, rz, rp
                    first = False
                else:
                    nx, nz = ax ^ rx, az ^ rz
                    ph = (
                        ph
                        + rp
                        + (ax & az).bit_count()
                        + (rx & rz).bit_count()
                        + 2 * (az & rx).bit_count()
                        - (nx & nz).bit_count()
                    ) & 3
                    ax, az = nx, nz
        if first or ax != px or az != pz or ph & 1:
            raise InternalPhaseError(
                "stabilizer product does not reproduce the requested Pauli"
            )
        return 1 if ph == 0 else -1

    def energy(self, state):
        raw = 0.0
        for px, pz, coeff in self.terms:
            raw += coeff * self.expect(px, pz, state)
        penalty = 0.0
        values = []
        for weight, target, obs in self.constraints:
            v = 0.0
            for px, pz, coeff in obs:
                v += coeff * self.expect(px, pz, state)
            values.append(v)
            penalty += weight * (v - target) ** 2
        return raw, penalty, tuple(values)

    # ---- entry points ----

    def evaluate_sub(self, sub):
        state = self.zero()
        self.apply_ops(self.segments[0], state)
        for d, v in enumerate(sub):
            if v:
                code, m = self.branches[d]
                self.apply_rot(code, m, v, state)
            self.apply_ops(self.segments[d + 1], state)
        return self.energy(state)

    def run_exhaustive(self, callback):
        """Visit all 4**p sub-assignments in lexicographic order.

        ``callback(sub_tuple, raw, penalty, values)`` is invoked per
        point. Prefix states are shared down the slot tree.
        """
        p = len(self.branches)
        sub = [0] * p

        def descend(d, state):
            if d == p:
                raw, penalty, values = self.energy(state)
                callback(tuple(sub), raw, penalty, values)
                return
            code, m = self.branches[d]
            tail = self.segments[d + 1]
            for v in range(4):
                xs, zs, negs = state
                child = (xs[:], zs[:], negs[:])
                if v:
                    self.apply_rot(code, m, v, child)
                self.apply_ops(tail, child)
                sub[d] = v
                descend(d + 1, child)
            sub[d] = 0

        root = self.zero()
        self.apply_ops(self.segments[0], root)
        descend(0, root)


def compile_objective(
    t: AnsatzTemplate,
    h: Hamiltonian,
    active_slots=None,
    base: ParameterAssignment | None = None,
) -> CompiledObjective:
    if active_slots is None:
        active_slots = tuple(range(t.num_slots))
    base_idx = base.indices if base is not None else (0,) * t.num_slots
    return CompiledObjective(t, h, tuple(active_slots), tuple(base_idx))
