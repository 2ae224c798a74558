"""Exception hierarchy.

Everything raised on purpose by the library derives from :class:`LctError`,
so callers (and the CLI) can tell domain failures apart from bugs.
"""


class LctError(Exception):
    """Base class for domain errors."""


class DeterminantViolation(LctError, ValueError):
    """The parameter matrix is not unimodular (ad - bc != 1)."""


class ZeroB(LctError, ValueError):
    """b == 0: the chirp-multiplication branch is not supported."""


class GridTooCoarse(LctError, ValueError):
    """A quadratic phase advances by more than pi between samples."""


class IncompatibleGrids(LctError, ValueError):
    """Grids that must share a step (or a lattice) do not."""


class InvalidExponent(LctError, ValueError):
    """Lebesgue exponent outside [1, inf]."""


class NonInvertibleSymbol(LctError):
    """The symbol lambda + L_A g * Phi (numerically) vanishes on the u-grid."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics


class DegenerateCase(NonInvertibleSymbol):
    """lambda == 0 and the LCT of the kernel has zeros on the grid."""


class ResidualTooLarge(LctError):
    """The computed solution does not satisfy the equation to tolerance."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics


class ParseError(LctError, ValueError):
    """Malformed signal file; the message carries the location."""


class GridMismatch(ParseError):
    """Sample count in a signal file disagrees with its grid header."""
