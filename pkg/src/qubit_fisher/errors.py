"""Exception hierarchy shared across the package."""

__all__ = [
    "QubitFisherError",
    "DimensionMismatch",
    "NotHermitian",
    "NotPsd",
    "NotDensityMatrix",
    "BlochOutOfBall",
    "WeightOutOfRange",
    "StationaryModel",
    "NotPure",
    "UnsupportedOnKernel",
    "InvalidPovm",
    "NotUnitAxis",
    "SingularNormalizer",
    "ZeroProbability",
    "DegenerateDenominator",
    "GridTooSmall",
    "FlatLikelihood",
    "ConfigError",
]


class QubitFisherError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(QubitFisherError):
    """Operands do not have compatible (or supported) dimensions."""


class NotHermitian(QubitFisherError):
    """A matrix required to be Hermitian is not, beyond tolerance."""


class NotPsd(QubitFisherError):
    """A matrix required to be positive semidefinite has a negative eigenvalue."""


class NotDensityMatrix(QubitFisherError):
    """Expected a unit-trace, nonnegative Hermitian matrix."""


class BlochOutOfBall(QubitFisherError):
    """Bloch vector lies outside the unit ball."""


class WeightOutOfRange(QubitFisherError):
    """Mixture weight left (0, 1) or hit the degenerate value 1/2."""


class StationaryModel(QubitFisherError):
    """The state family does not move at this parameter value."""


class NotPure(QubitFisherError):
    """Expected a rank-one density matrix."""


class UnsupportedOnKernel(QubitFisherError):
    """The derivative has weight on the kernel-kernel sector, so no score exists."""


class InvalidPovm(QubitFisherError):
    """Measurement elements do not form a valid POVM."""


class NotUnitAxis(QubitFisherError):
    """Measurement axis is not a unit vector."""


class SingularNormalizer(QubitFisherError):
    """Random POVM normalizer stayed singular after the allowed redraws."""


class ZeroProbability(QubitFisherError):
    """Outcome probability vanishes; the requested quantity is undefined."""


class DegenerateDenominator(QubitFisherError):
    """Overlap-ratio denominator is numerically zero."""


class GridTooSmall(QubitFisherError):
    """Parameter grid has too few distinct points."""


class FlatLikelihood(QubitFisherError):
    """Likelihood does not vary over the search grid; parameter not identifiable."""


class ConfigError(QubitFisherError):
    """Invalid command-line or file configuration; message names the field."""
