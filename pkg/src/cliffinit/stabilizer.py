"""Stabilizer-tableau simulation of Clifford circuits.

A state is tracked by 2n signed Pauli generator rows (n destabilizers,
n stabilizers) stored as integer bitmasks, so a gate update touches a
couple of machine words per row. Expectations of Hermitian Paulis on the
tracked state are exact elements of {-1, 0, +1}.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalPhaseError, QubitOutOfRange, SizeMismatch
from .pauli import PauliString, mul

ROTATION_KINDS = ("RX", "RY", "RZ")
FIXED_KINDS = ("H", "S", "SDG", "X", "Y", "Z", "CX")


@dataclass(frozen=True)
class CliffordGate:
    """One gate instruction; rotations carry a quarter-turn count in {0,1,2,3}."""

    kind: str
    qubits: tuple[int, ...]
    quarter_turns: int | None = None

    def __post_init__(self):
        if self.kind not in ROTATION_KINDS and self.kind not in FIXED_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind == "CX":
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise ValueError("CX needs two distinct qubits")
        elif len(self.qubits) != 1:
            raise ValueError(f"{self.kind} acts on exactly one qubit")
        if self.kind in ROTATION_KINDS:
            if self.quarter_turns is None or not 0 <= self.quarter_turns <= 3:
                raise ValueError("rotations need quarter_turns in {0,1,2,3}")
        elif self.quarter_turns is not None:
            raise ValueError(f"{self.kind} takes no quarter_turns")


def conjugate_pauli(g: CliffordGate, p: PauliString) -> PauliString:
    """Conjugation ``g P g†`` of a signed Hermitian Pauli (phase 0 or 2)."""
    x, z, neg = _conjugate_bits(g, p.x, p.z, p.phase == 2)
    return PauliString(p.n, x, z, 2 if neg else 0)


def _conjugate_bits(g: CliffordGate, x: int, z: int, neg: bool):
    """The single row-update rule behind both conjugate_pauli and apply_gate."""
    kind = g.kind
    if kind == "CX":
        mc = 1 << g.qubits[0]
        mt = 1 << g.qubits[1]
        xc, zc = x & mc, z & mc
        xt, zt = x & mt, z & mt
        # sign flips iff X on control, Z on target, and (X on target) == (Z on control)
        if xc and zt and (bool(xt) == bool(zc)):
            neg = not neg
        if xc:
            x ^= mt
        if zt:
            z ^= mc
        return x, z, neg

    m = 1 << g.qubits[0]
    xb, zb = x & m, z & m
    k = g.quarter_turns
    if kind in ROTATION_KINDS:
        if k == 0:
            return x, z, neg  # quarter_turns = 0 is the identity
        if kind == "RZ":
            kind = ("S", "Z", "SDG")[k - 1]

    if kind == "H":
        if xb and zb:
            neg = not neg
        if bool(xb) != bool(zb):
            x ^= m
            z ^= m
    elif kind == "S":
        if xb and zb:
            neg = not neg
        z ^= xb
    elif kind == "SDG":
        if xb and not zb:
            neg = not neg
        z ^= xb
    elif kind == "X":
        if zb:
            neg = not neg
    elif kind == "Y":
        if bool(xb) != bool(zb):
            neg = not neg
    elif kind == "Z":
        if xb:
            neg = not neg
    elif kind == "RY":
        if k == 2:
            if bool(xb) != bool(zb):
                neg = not neg
        else:
            # quarter turn about Y: swaps X and Z, one direction picks up a sign
            if k == 1 and xb and not zb:
                neg = not neg
            if k == 3 and zb and not xb:
                neg = not neg
            if bool(xb) != bool(zb):
                x ^= m
                z ^= m
    elif kind == "RX":
        if k == 2:
            if zb:
                neg = not neg
        else:
            # quarter turn about X: toggles the X bit wherever Z is set
            if k == 1 and zb and not xb:
                neg = not neg
            if k == 3 and zb and xb:
                neg = not neg
            if zb:
                x ^= m
    return x, z, neg


class StabilizerTableau:
    """Destabilizer/stabilizer generator rows with per-row signs.

    Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers; row i of one
    block anticommutes with row i of the other and commutes with the rest.
    """

    __slots__ = ("n", "xs", "zs", "negs")

    def __init__(self, n: int, xs: list[int], zs: list[int], negs: list[bool]):
        self.n = n
        self.xs = xs
        self.zs = zs
        self.negs = negs

    def copy(self) -> "StabilizerTableau":
        return StabilizerTableau(self.n, self.xs[:], self.zs[:], self.negs[:])

    def row(self, i: int) -> PauliString:
        return PauliString(self.n, self.xs[i], self.zs[i], 2 if self.negs[i] else 0)

    def destabilizers(self) -> list[PauliString]:
        return [self.row(i) for i in range(self.n)]

    def stabilizers(self) -> list[PauliString]:
        return [self.row(i) for i in range(self.n, 2 * self.n)]

    def __repr__(self):  # pragma: no cover - debugging aid
        rows = [("-" if f else "+") + self.row(i).label() for i in range(2 * self.n)]
        return f"StabilizerTableau(destab={rows[: self.n]}, stab={rows[self.n:]})"


def zero_state(n: int) -> StabilizerTableau:
    """Tableau of |0...0>: destabilizers +X_j, stabilizers +Z_j."""
    if n < 1:
        raise ValueError("qubit count must be >= 1")
    xs = [1 << j for j in range(n)] + [0] * n
    zs = [0] * n + [1 << j for j in range(n)]
    return StabilizerTableau(n, xs, zs, [False] * (2 * n))


def apply_gate(t: StabilizerTableau, g: CliffordGate) -> StabilizerTableau:
    """Conjugate every generator row by the gate. Mutates and returns ``t``."""
    for q in g.qubits:
        if not 0 <= q < t.n:
            raise QubitOutOfRange(f"qubit {q} outside 0..{t.n - 1}")
    xs, zs, negs = t.xs, t.zs, t.negs
    for i in range(2 * t.n):
        xs[i], zs[i], negs[i] = _conjugate_bits(g, xs[i], zs[i], negs[i])
    return t


def apply_circuit(t: StabilizerTableau, gates) -> StabilizerTableau:
    for g in gates:
        apply_gate(t, g)
    return t


def expectation(t: StabilizerTableau, p: PauliString) -> int:
    """Exact expectation of a Hermitian Pauli on the tracked state.

    Returns 0 when p anticommutes with some stabilizer generator;
    otherwise p is (up to sign) a product of stabilizer rows, and the
    accumulated sign of that product is returned.
    """
    if p.n != t.n:
        raise SizeMismatch(f"operator width {p.n} != state width {t.n}")
    if p.phase != 0:
        raise ValueError("expectation is defined for phase-free Paulis")
    if p.x == 0 and p.z == 0:
        return 1

    n = t.n
    xs, zs = t.xs, t.zs
    px, pz = p.x, p.z
    for i in range(n, 2 * n):
        if ((px & zs[i]).bit_count() + (pz & xs[i]).bit_count()) & 1:
            return 0

    # p is in the +/- stabilizer group; the stabilizer rows whose paired
    # destabilizer anticommutes with p multiply out to +/- p exactly.
    acc = None
    for i in range(n):
        if ((px & zs[i]).bit_count() + (pz & xs[i]).bit_count()) & 1:
            row = t.row(n + i)
            acc = row if acc is None else mul(acc, row)
    if acc is None or acc.x != px or acc.z != pz:
        raise InternalPhaseError(
            "stabilizer product does not reproduce the requested Pauli"
        )
    if acc.phase == 0:
        return 1
    if acc.phase == 2:
        return -1
    raise InternalPhaseError("accumulated +/-i phase on a Hermitian product")


def check_symplectic(t: StabilizerTableau) -> bool:
    """Verify the destabilizer/stabilizer pairing invariants."""

    def anticommute(i: int, j: int) -> bool:
        return ((t.xs[i] & t.zs[j]).bit_count() + (t.zs[i] & t.xs[j]).bit_count()) & 1 == 1

    n = t.n
    for i in range(n):
        for j in range(n):
            if anticommute(n + i, n + j):  # stabilizers must commute
                return False
            if anticommute(i, j):  # destabilizers must commute
                return False
            if anticommute(i, n + j) != (i == j):  # symplectic pairing
                return False
    return True
