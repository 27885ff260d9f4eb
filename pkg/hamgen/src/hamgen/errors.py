"""Generator error types."""


class HamgenError(Exception):
    """Base class for generation failures."""


class ToolchainMissing(HamgenError):
    """Requested element/basis is outside the built-in toolchain."""


class SCFNonConvergence(HamgenError):
    """The self-consistent field loop did not converge."""


class BadSpec(HamgenError):
    """Molecule specification is inconsistent (charges, spins, orbitals)."""
