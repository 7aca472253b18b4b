"""Exception types shared across the package."""


class DtauError(Exception):
    """Base class for all errors raised by this package."""


class PoleAtPoint(DtauError):
    """Evaluation requested at a pole."""


class HigherOrderPole(DtauError):
    """Residue requested where the pole order is two or more."""


class PoleAtInfinity(DtauError):
    """Expansion at infinity requested for an entry that grows there."""


class SingularMatrix(DtauError):
    """Matrix inverse requested for an identically singular matrix."""


class DegreeCapExceeded(DtauError):
    """Polynomial degree exceeded the configured safety bound."""


class NonGeneric(DtauError):
    """A pairing required by a shift move vanished; the deformation does not exist."""


class FrameKindMismatch(DtauError):
    """A shift move was applied to frames of the wrong singularity kind."""


class MissingPath(DtauError):
    """The ledger does not contain the lattice points needed for a ratio."""


class ZeroDenominator(DtauError):
    """A tau second ratio has a vanishing denominator."""


class BasicAssumptionFails(DtauError):
    """The biorthogonality Gram matrix is singular (partition function is zero)."""


class InfeasibleSize(DtauError):
    """Brute-force enumeration would exceed the configured term cap."""


class NotTrivial(DtauError):
    """The bundle is not a direct sum of degree -1 line bundles."""


class DegenerateFormalType(DtauError):
    """The expansion at infinity cannot be brought to the expected diagonal form."""


class Unsupported(DtauError):
    """Requested operation is outside the implemented rank/shape range."""


class SingularStep(DtauError):
    """A recurrence step hit a vanishing denominator."""


class InternalMismatch(DtauError):
    """Two formulas that must agree produced different values."""


class CoincidentPoints(DtauError):
    """Two singularity locations coincide where distinct points are required."""


class InvalidSpec(DtauError):
    """A configuration document failed validation."""
