"""Exception hierarchy shared by all modules."""


class BuffonError(Exception):
    """Base class for every error raised by this package."""


class InvalidBody(BuffonError, ValueError):
    """A body description violates its invariants (non-convex, too few vertices, ...)."""


class DegenerateBody(InvalidBody):
    """The body has empty interior (a segment or a point) where a 2D body is required."""


class NotInside(BuffonError, ValueError):
    """A query point lies outside the body."""


class UnsupportedVariant(BuffonError, TypeError):
    """The operation has no exact implementation for this body type."""


class OutOfRange(BuffonError, ValueError):
    """A scalar argument is outside the domain of the formula."""


class NotNormalized(BuffonError, ValueError):
    """The body perimeter is not 2*pi, which the bound chain assumes."""


class EmptyErosion(BuffonError, ValueError):
    """The interior parallel is empty, so the requested quantity is undefined."""


class DiskInput(BuffonError, ValueError):
    """The body is a disk, for which h'(0) = 0 and no comparison window exists."""


class SamplingError(BuffonError, RuntimeError):
    """Rejection sampling exceeded its attempt budget."""
