"""Exception types raised across lgkit."""


class LGKitError(Exception):
    """Base class for all lgkit errors."""


class InvalidModeIndex(LGKitError, ValueError):
    """(n, l) violates |l| <= n or the parity rule n - |l| even."""


class CutoffTooSmall(LGKitError, ValueError):
    """The Fock cutoff cannot represent the requested state or operation."""


class ConvergenceFailure(LGKitError, RuntimeError):
    """A truncated series did not reach its tail tolerance within the term cap."""


class QuadratureUnderResolved(LGKitError, RuntimeError):
    """Refining a quadrature rule moved the result by more than allowed."""


class OrderNearSingular(LGKitError, ValueError):
    """Fractional Fourier order too close to a multiple of pi."""
