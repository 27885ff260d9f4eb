"""Hardware-efficient circuit templates with quarter-turn tunable slots.

The template alternates rotation layers (one RY then one RZ slot per
qubit) with linear CX ladders; ``reps`` entangling layers give
``reps + 1`` rotation layers and ``2 * n * (reps + 1)`` slots. Each slot
takes an index in {0,1,2,3}, i.e. an angle of ``index * pi/2``, so every
bound gate is Clifford and the space has exactly ``4**slots`` points.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexOutOfAlphabet, LengthMismatch
from .stabilizer import CliffordGate


@dataclass(frozen=True)
class Slot:
    """One tunable rotation position: (gate kind, qubit, rotation layer)."""

    kind: str
    qubit: int
    layer: int


@dataclass(frozen=True)
class AnsatzTemplate:
    n: int
    reps: int
    slots: tuple[Slot, ...]
    entangler: tuple[tuple[int, int], ...]

    @property
    def num_slots(self) -> int:
        return len(self.slots)

    @property
    def space_size(self) -> int:
        return 4 ** len(self.slots)

    def slot_index(self, kind: str, qubit: int, layer: int) -> int:
        """Position of a slot in the assignment vector."""
        return 2 * self.n * layer + 2 * qubit + (0 if kind == "RY" else 1)

    def final_ry_slots(self) -> tuple[int, ...]:
        """Indices of the last rotation layer's RY slots, one per qubit."""
        return tuple(self.slot_index("RY", q, self.reps) for q in range(self.n))


@dataclass(frozen=True)
class ParameterAssignment:
    """One point of the discrete space: a quarter-turn index per slot."""

    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(v) for v in self.indices))


def build_su2(n: int, reps: int) -> AnsatzTemplate:
    """Linear-entanglement SU2-style template."""
    if n < 1 or reps < 1:
        raise ValueError("need n >= 1 and reps >= 1")
    slots = []
    for layer in range(reps + 1):
        for q in range(n):
            slots.append(Slot("RY", q, layer))
            slots.append(Slot("RZ", q, layer))
    ladder = tuple((q, q + 1) for q in range(n - 1))
    return AnsatzTemplate(n, reps, tuple(slots), ladder)


def bind(t: AnsatzTemplate, a: ParameterAssignment) -> list[CliffordGate]:
    """Assemble the gate list in execution order; index-0 slots are skipped."""
    idx = a.indices
    if len(idx) != t.num_slots:
        raise LengthMismatch(
            f"assignment has {len(idx)} entries, template has {t.num_slots} slots"
        )
    for v in idx:
        if not 0 <= v <= 3:
            raise IndexOutOfAlphabet(f"slot value {v} outside 0..3")
    gates: list[CliffordGate] = []
    pos = 0
    for layer in range(t.reps + 1):
        for q in range(t.n):
            for kind in ("RY", "RZ"):
                v = idx[pos]
                pos += 1
                if v:
                    gates.append(CliffordGate(kind, (q,), v))
        if layer < t.reps:
            for c, tq in t.entangler:
                gates.append(CliffordGate("CX", (c, tq)))
    return gates


def bitstring_assignment(t: AnsatzTemplate, bits) -> ParameterAssignment:
    """Assignment preparing the computational basis state |bits>.

    All slots are 0 except the final rotation layer's RY slots, which get
    a half turn (index 2) wherever the bit is 1. Earlier layers act
    trivially on |0...0>, so binding this and simulating yields exactly
    the requested basis state.
    """
    if isinstance(bits, str):
        if any(c not in "01" for c in bits):
            raise LengthMismatch(f"bitstring {bits!r} must contain only 0/1")
        bits = [int(c) for c in bits]
    else:
        bits = [int(b) for b in bits]
    if len(bits) != t.n:
        raise LengthMismatch(f"bitstring length {len(bits)} != {t.n} qubits")
    indices = [0] * t.num_slots
    for q, b in enumerate(bits):
        if b:
            indices[t.slot_index("RY", q, t.reps)] = 2
    return ParameterAssignment(tuple(indices))
