"""Exception types shared across the package."""


class CayleyError(Exception):
    """Base class for all library errors."""


class ZeroDivisor(CayleyError):
    """Inversion of a quaternion whose norm is below the zero threshold."""


class ShapeMismatch(CayleyError):
    """Matrix dimensions incompatible with the requested operation."""


class RingMismatch(CayleyError):
    """Operands live over different scalar rings."""


class Singular(CayleyError):
    """Matrix failed the invertibility test."""


class NotOrthogonal(CayleyError):
    """Matrix does not satisfy A A* = I within the requested tolerance."""


class DegenerateSample(CayleyError):
    """Random sampling repeatedly produced a numerically degenerate draw."""


class OutsideDomain(CayleyError):
    """Argument lies outside the Cayley domain of the given center."""


class NotSkew(CayleyError):
    """Matrix is not skew-hermitian within tolerance."""


class NotCritical(CayleyError):
    """Group element is not a critical point of the height function."""


class NotTangent(CayleyError):
    """Matrix is not tangent to the group at the given base point."""


class NotInModelSpace(CayleyError):
    """Vector violates the linear constraints of the critical-set chart."""


class SpaceMismatch(CayleyError):
    """Sample does not belong to the space a covering is declared on."""


class DegenerateConfiguration(CayleyError):
    """Witness construction degenerated (no usable null-space direction)."""


class ParseError(CayleyError):
    """Malformed JSON document or schema violation."""


class UnknownSpace(CayleyError):
    """Space name not recognized by the covering drivers."""
