"""Pauli-operator algebra and the weighted Pauli-sum Hamiltonian model.

Conventions used throughout the toolkit:

* Qubit ordering: the leftmost character of a label acts on qubit 0.
* Bit packing: ``x`` and ``z`` are integer bitmasks with bit ``j``
  describing qubit ``j`` (so qubit 0 is the least significant bit).
* An operator is ``i**phase * prod_j sigma(x_j, z_j)`` where
  ``sigma(1,0) = X``, ``sigma(0,1) = Z`` and ``sigma(1,1) = Y``;
  a plain ``Y`` is therefore stored phase-free.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import (
    BadChar,
    BadLength,
    InconsistentQubitCount,
    NonFiniteCoefficient,
    SchemaError,
    SizeMismatch,
)

_CHAR_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_CHAR = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}

COEFF_PRUNE_THRESHOLD = 1e-12


@dataclass(frozen=True)
class PauliString:
    """An n-qubit Pauli operator with a power-of-i prefactor.

    ``phase`` is the exponent of ``i`` modulo 4; Hermitian operators
    carry phase 0 (``+P``) or 2 (``-P``).
    """

    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("qubit count must be >= 1")
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("x/z bits outside qubit range")
        if not 0 <= self.phase <= 3:
            object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0, 0)

    @property
    def weight(self) -> int:
        """Number of non-identity sites."""
        return (self.x | self.z).bit_count()

    @property
    def is_diagonal(self) -> bool:
        """True iff the operator is a tensor product of I and Z only."""
        return self.x == 0

    def label(self) -> str:
        """Text form, leftmost character = qubit 0. Phase is not rendered."""
        chars = []
        for j in range(self.n):
            bits = ((self.x >> j) & 1, (self.z >> j) & 1)
            chars.append(_BITS_TO_CHAR[bits])
        return "".join(chars)

    def __mul__(self, other: "PauliString") -> "PauliString":
        return mul(self, other)

    def __repr__(self):  # pragma: no cover - debugging aid
        sign = {0: "+", 1: "+i", 2: "-", 3: "-i"}[self.phase]
        return f"PauliString({sign}{self.label()})"


def parse_pauli(label: str, n: int) -> PauliString:
    """Parse a text label like ``"IZZI"`` into a phase-free PauliString.

    The character at position ``j`` acts on qubit ``j``.
    """
    if len(label) != n:
        raise BadLength(f"label {label!r} has length {len(label)}, expected {n}")
    x = z = 0
    for j, ch in enumerate(label):
        try:
            xb, zb = _CHAR_TO_BITS[ch]
        except KeyError:
            raise BadChar(f"invalid Pauli character {ch!r} in {label!r}") from None
        x |= xb << j
        z |= zb << j
    return PauliString(n, x, z, 0)


def mul(a: PauliString, b: PauliString) -> PauliString:
    """Operator product ``a @ b`` with exact mod-4 phase tracking."""
    if a.n != b.n:
        raise SizeMismatch(f"operand widths differ: {a.n} vs {b.n}")
    x = a.x ^ b.x
    z = a.z ^ b.z
    # Each sigma factor is i^(x&z) * X^x * Z^z; commuting b's X block past
    # a's Z block contributes (-1)^(a.z & b.x).
    phase = (
        a.phase
        + b.phase
        + (a.x & a.z).bit_count()
        + (b.x & b.z).bit_count()
        + 2 * (a.z & b.x).bit_count()
        - (x & z).bit_count()
    ) % 4
    return PauliString(a.n, x, z, phase)


def commutes(a: PauliString, b: PauliString) -> bool:
    """Symplectic commutation test: true iff ``ab = ba``."""
    if a.n != b.n:
        raise SizeMismatch(f"operand widths differ: {a.n} vs {b.n}")
    return ((a.x & b.z).bit_count() + (a.z & b.x).bit_count()) % 2 == 0


@dataclass(frozen=True)
class PauliTerm:
    """A Hermitian Pauli operator with a real coefficient (Hartree for chemistry)."""

    pauli: PauliString
    coeff: float

    def __post_init__(self):
        if self.pauli.phase != 0:
            raise ValueError("Hamiltonian terms must carry phase-free Paulis")
        if not math.isfinite(self.coeff):
            raise NonFiniteCoefficient(f"coefficient {self.coeff!r} is not finite")


@dataclass(frozen=True)
class ConstraintSpec:
    """A Pauli-sum observable with a target expectation and penalty weight.

    Used to keep searches inside a physical sector (e.g. electron count
    or spin projection) by penalizing ``weight * (<observable> - target)**2``
    directly in the objective.
    """

    name: str
    observable: tuple[PauliTerm, ...]
    target: float
    weight: float = 10.0

    def __post_init__(self):
        if self.weight < 0:
            raise ValueError("constraint weight must be >= 0")


@dataclass
class Hamiltonian:
    """Weighted Pauli sum ``H = sum_i c_i P_i`` plus optional constraints."""

    n: int
    terms: tuple[PauliTerm, ...]
    constraints: tuple[ConstraintSpec, ...] = ()
    name: str = ""
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        for t in self.terms:
            if t.pauli.n != self.n:
                raise InconsistentQubitCount(
                    f"term {t.pauli.label()!r} has {t.pauli.n} qubits, expected {self.n}"
                )
        for c in self.constraints:
            for t in c.observable:
                if t.pauli.n != self.n:
                    raise InconsistentQubitCount(
                        f"constraint {c.name!r} term width {t.pauli.n} != {self.n}"
                    )

    @classmethod
    def from_terms(
        cls,
        n: int,
        terms: Iterable[PauliTerm],
        constraints: Iterable[ConstraintSpec] = (),
        name: str = "",
        metadata: dict | None = None,
    ) -> "Hamiltonian":
        """Build a Hamiltonian, merging duplicate Paulis and pruning ~0 terms."""
        merged: dict[PauliString, float] = {}
        for t in terms:
            merged[t.pauli] = merged.get(t.pauli, 0.0) + t.coeff
        kept = tuple(
            PauliTerm(p, c)
            for p, c in merged.items()
            if abs(c) >= COEFF_PRUNE_THRESHOLD
        )
        return cls(n, kept, tuple(constraints), name, metadata or {})

    def to_document(self) -> dict:
        """Serialize to the Hamiltonian JSON schema."""
        doc = {
            "name": self.name,
            "num_qubits": self.n,
            "terms": [
                {"pauli": t.pauli.label(), "coeff": t.coeff} for t in self.terms
            ],
        }
        if self.constraints:
            doc["constraints"] = [
                {
                    "name": c.name,
                    "terms": [
                        {"pauli": t.pauli.label(), "coeff": t.coeff}
                        for t in c.observable
                    ],
                    "target": c.target,
                    "weight": c.weight,
                }
                for c in self.constraints
            ]
        if self.metadata:
            doc["metadata"] = self.metadata
        return doc


def _parse_term_list(raw, n: int, where: str) -> list[PauliTerm]:
    if not isinstance(raw, list) or not raw:
        raise SchemaError(f"{where}: expected a non-empty list of terms")
    out = []
    for entry in raw:
        if not isinstance(entry, Mapping) or "pauli" not in entry or "coeff" not in entry:
            raise SchemaError(f"{where}: each term needs 'pauli' and 'coeff'")
        label = entry["pauli"]
        if not isinstance(label, str):
            raise SchemaError(f"{where}: 'pauli' must be a string")
        if len(label) != n:
            raise InconsistentQubitCount(
                f"{where}: term {label!r} has {len(label)} characters, expected {n}"
            )
        coeff = entry["coeff"]
        if not isinstance(coeff, (int, float)) or isinstance(coeff, bool):
            raise SchemaError(f"{where}: 'coeff' must be a number")
        if not math.isfinite(coeff):
            raise NonFiniteCoefficient(f"{where}: coefficient {coeff!r} is not finite")
        out.append(PauliTerm(parse_pauli(label, n), float(coeff)))
    return out


def load_hamiltonian(document) -> Hamiltonian:
    """Build a validated Hamiltonian from a schema document.

    Accepts a parsed dict, a JSON string, or a filesystem path. Duplicate
    terms are merged by summing coefficients; terms below
    ``COEFF_PRUNE_THRESHOLD`` in magnitude are dropped.
    """
    if isinstance(document, (str, Path)):
        p = Path(document)
        text = p.read_text() if p.exists() else str(document)
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            raise SchemaError(f"not valid JSON: {e}") from None
    if not isinstance(document, Mapping):
        raise SchemaError("expected a JSON object at top level")
    if "num_qubits" not in document:
        raise SchemaError("missing 'num_qubits'")
    n = document["num_qubits"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SchemaError("'num_qubits' must be a positive integer")
    if "terms" not in document:
        raise SchemaError("missing 'terms'")
    terms = _parse_term_list(document["terms"], n, "terms")

    constraints = []
    for i, raw in enumerate(document.get("constraints", []) or []):
        if not isinstance(raw, Mapping):
            raise SchemaError("constraints entries must be objects")
        where = f"constraints[{i}]"
        if "terms" not in raw or "target" not in raw:
            raise SchemaError(f"{where}: needs 'terms' and 'target'")
        target = raw["target"]
        if not isinstance(target, (int, float)) or isinstance(target, bool):
            raise SchemaError(f"{where}: 'target' must be a number")
        weight = raw.get("weight", 10.0)
        if not isinstance(weight, (int, float)) or isinstance(weight, bool) or weight < 0:
            raise SchemaError(f"{where}: 'weight' must be a number >= 0")
        constraints.append(
            ConstraintSpec(
                name=str(raw.get("name", f"constraint{i}")),
                observable=tuple(_parse_term_list(raw["terms"], n, where)),
                target=float(target),
                weight=float(weight),
            )
        )

    metadata = document.get("metadata", {}) or {}
    if not isinstance(metadata, Mapping):
        raise SchemaError("'metadata' must be an object")

    return Hamiltonian.from_terms(
        n,
        terms,
        constraints,
        name=str(document.get("name", "")),
        metadata=dict(metadata),
    )
