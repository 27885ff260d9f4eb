"""Exception types shared across the toolkit.

Every error raised on a documented failure path derives from
:class:`CliffInitError`, so callers (and the CLI) can distinguish
input problems from runtime problems with a single except clause.
"""


class CliffInitError(Exception):
    """Base class for all toolkit errors."""


# ---- Pauli / Hamiltonian ingestion ----

class SizeMismatch(CliffInitError):
    """Two operators (or an operator and a state) differ in qubit count."""


class BadLength(CliffInitError):
    """A Pauli label does not have the expected number of characters."""


class BadChar(CliffInitError):
    """A Pauli label contains a character outside I, X, Y, Z."""


class SchemaError(CliffInitError):
    """A Hamiltonian document does not conform to the JSON schema."""


class InconsistentQubitCount(SchemaError):
    """A term's Pauli label length disagrees with the declared qubit count."""


class NonFiniteCoefficient(SchemaError):
    """A term coefficient is NaN or infinite."""


# ---- Stabilizer simulation ----

class QubitOutOfRange(CliffInitError):
    """A gate addresses a qubit index outside the tableau."""


class InternalPhaseError(CliffInitError):
    """Sign accumulation produced a +/-i phase; the tableau is corrupt."""


# ---- Ansatz binding ----

class LengthMismatch(CliffInitError):
    """An assignment (or bitstring) length does not match the template."""


class IndexOutOfAlphabet(CliffInitError):
    """An assignment entry is outside the allowed angle alphabet."""


# ---- Search ----

class SpaceTooLarge(CliffInitError):
    """The discrete space exceeds the exhaustive-enumeration cap."""

    def __init__(self, space_size: int, cap: int):
        super().__init__(f"search space has {space_size} points, cap is {cap}")
        self.space_size = space_size
        self.cap = cap


class SpaceExhausted(CliffInitError):
    """No unevaluated assignment remains but the budget is not spent."""


# ---- Baselines ----

class TooManyQubits(CliffInitError):
    """Problem width exceeds a solver's qubit cap."""


class NoFeasibleBitstring(CliffInitError):
    """Every computational basis state violates some constraint."""


class DegenerateDenominator(CliffInitError):
    """Correlation-energy denominator is numerically zero."""


# ---- Dense (non-Clifford) evaluation ----

class ImaginaryResidue(CliffInitError):
    """A supposedly real expectation carries a large imaginary part."""
