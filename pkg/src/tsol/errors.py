"""Exception types shared across the package."""


class TsolError(Exception):
    """Base class for all domain errors."""


class IllegalMove(TsolError):
    """A move whose triangle is not doubly occupied, or whose target is taken."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class BadSize(TsolError):
    """Triangle size out of range."""


class BadParams(TsolError):
    """Parameters out of range (e.g. excess count too large for the size)."""


class ParseError(TsolError):
    """Malformed input text; carries the 1-based line number."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class NotAFilling(TsolError):
    """Pattern passed to decompose() is not a closed union of non-touching triangles."""


class TooLarge(TsolError):
    """Input exceeds a guard meant to keep exhaustive enumeration feasible."""


class CapExceeded(TsolError):
    """Breadth-first search hit the vertex cap; carries the partial count."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotSameOrbit(TsolError):
    """The two patterns have different canonical representatives."""


class NotTep(TsolError):
    """Accepted-triple set fails the unique-extension check; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotABasis(TsolError):
    """Pattern is not a basis of the triangle it was checked against."""


class NotSameTriangle(TsolError):
    """Two bases do not span the same triangle."""


class InternalError(TsolError):
    """An internal invariant was violated; indicates a bug, not bad input."""
