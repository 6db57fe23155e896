"""Exception types shared across the package."""


class SpectralLiftError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(SpectralLiftError):
    """Operands have incompatible dimensions."""


class EnumerationCapError(SpectralLiftError):
    """A ball enumeration would exceed the configured element cap."""


class DomainBreachError(SpectralLiftError):
    """A spectrum left the admissible domain of a scalar transform."""


class DegenerateModuleError(SpectralLiftError):
    """Every generator commutator vanishes; no metric can be built."""


class AxiomViolationError(SpectralLiftError):
    """A module failed a structural axiom beyond tolerance."""


class SchemaError(SpectralLiftError):
    """An interchange file does not conform to the expected schema."""


class InsufficientDataError(SpectralLiftError):
    """Not enough data points for a requested fit."""
