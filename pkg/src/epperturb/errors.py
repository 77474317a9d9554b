"""Exception types raised by the numerical routines in this package."""


class EpperturbError(Exception):
    """Base class for all errors raised by epperturb operations."""


class SingularMatrix(EpperturbError):
    """Linear system matrix is singular (or too ill-conditioned) at the requested tolerance."""


class DimensionTooLarge(EpperturbError):
    """Matrix dimension exceeds the supported dense desk-scale limit."""


class NonConvergence(EpperturbError):
    """An iterative solver failed to reach its residual target."""


class BadCouplingLength(EpperturbError):
    """Coupling vector length does not match floor(N/2)."""


class PathOutOfRange(EpperturbError):
    """Interpolation parameters leave the admissible unit interval."""


class NotSingleBlock(EpperturbError):
    """Rank profile of (H - s I) is not that of a single Jordan block."""


class ChainBreakdown(EpperturbError):
    """A Jordan-chain equation is inconsistent at the working tolerance."""


class UnsupportedK(EpperturbError):
    """No stored transition-matrix fixture for this block dimension."""


class SingularQ(EpperturbError):
    """Transition matrix is not invertible at the requested tolerance."""


class DegenerateGammas(EpperturbError):
    """Complex-symmetric fixture requires two distinct loss rates."""


class SingularSystem(EpperturbError):
    """The bidiagonal-plus-shift system (L + Z) is singular at this energy."""


class AllOrdersVanish(EpperturbError):
    """Secular polynomial reduces to a pure power; no leading-order balance exists."""


class NotPhysical(EpperturbError):
    """Operation requires a real, non-degenerate spectrum."""


class NoSignChange(EpperturbError):
    """Bisection ray does not bracket a physical-domain boundary."""
