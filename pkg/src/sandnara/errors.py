"""Exception types shared across the package."""


class SandnaraError(Exception):
    """Base class for all library errors."""


class NotMonotone(SandnaraError):
    """A step word does not consist of the required number of N and E steps."""


class PathsCross(SandnaraError):
    """Upper and lower paths touch or cross strictly between their endpoints."""


class NotRecurrent(SandnaraError):
    """Operation requires a recurrent configuration."""


class NotSorted(SandnaraError):
    """Operation requires a weakly decreasing configuration."""


class NotMinanz(SandnaraError):
    """Operation requires a minimal almost-non-zero configuration."""


class InvalidMatrix(SandnaraError):
    """Set matrix violates the bicomposition invariants."""


class NotUpperTriangular(SandnaraError):
    """Operation requires an upper-triangular bicomposition matrix."""


class NotIntervalOrder(SandnaraError):
    """Relation is not a (2+2)-free partial order."""


class NotInDomain(SandnaraError):
    """Polyomino lies outside the domain of the requested bijection."""


class VertexNotToppled(SandnaraError):
    """Vertex never topples during the canonical toppling of the configuration."""


class ResourceLimit(SandnaraError):
    """Requested enumeration exceeds the configured object cap."""
