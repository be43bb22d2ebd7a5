from __future__ import annotations


class ConvexRadonError(Exception):
    """Base class for every error raised by convex_radon."""


class InvalidBodyError(ConvexRadonError, ValueError):
    """A body descriptor or body construction violates its invariants."""


class SingularMapError(InvalidBodyError):
    """A linear map with zero determinant was applied to a body."""


class NotConvexError(ConvexRadonError, TypeError):
    """A convex-only operation was requested on a body without convex structure."""


class NotSymmetricError(ConvexRadonError, ValueError):
    """An operation that assumes origin symmetry received a non-symmetric body."""


class UnsupportedBodyError(ConvexRadonError, TypeError):
    """The body class has no exact surface measure / closed form for this operation."""


class DimensionCapError(ConvexRadonError, ValueError):
    """The dimension exceeds what an exact low-dimensional routine supports."""


class SamplingError(ConvexRadonError, RuntimeError):
    """A randomized routine could not produce a usable sample."""


class CertificationError(ConvexRadonError, RuntimeError):
    """Containment of a body in a computed ellipsoid could not be certified."""


class NormalizationError(ConvexRadonError, ValueError):
    """A density or body does not satisfy the normalization a theorem requires."""


class ConfigError(ConvexRadonError, ValueError):
    """The run configuration is invalid. The message names the offending field."""


class DroppedSubspace(SamplingError):
    """A net objective found a subspace unusable, e.g. a vanishing denominator."""
