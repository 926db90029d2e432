"""Exception types shared across the package."""


class SpinSyncError(Exception):
    """Base class for every error raised by this package."""


class GraphError(SpinSyncError):
    """Invalid graph construction or corrupted graph structure."""


class LoopEdgeError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class ZeroWeightError(GraphError):
    pass


class VertexOutOfRangeError(GraphError):
    pass


class SpinTooSmallError(GraphError):
    """Spin count below the maximum edge weight of the base graph."""


class NonUniformFiberError(GraphError):
    """Cross-edge counts between fibers are inconsistent with any base weight."""


class DegenerateOrderError(GraphError):
    """Graph too small for the requested metric."""


class DimensionMismatchError(SpinSyncError):
    """Phase vector length does not match the graph order."""


class NotAnEquilibriumError(SpinSyncError):
    """Operation requires a phase vector with residual below the tolerance."""


class NotSymmetricError(SpinSyncError):
    pass


class NoConvergenceError(SpinSyncError):
    """An iterative solver hit its iteration cap."""


class MatchFailureError(SpinSyncError):
    """Spectral matching between base and lifted eigenvalues exceeded tolerance."""


class InvalidParamsError(SpinSyncError):
    """Family parameters violate their constraints."""


class KTooSmallError(InvalidParamsError):
    """Certificates require a spin count of at least 2."""


class ThresholdError(SpinSyncError):
    """Density threshold at or above the 11/16 limit; the scan cannot terminate."""


class CertificationFailedError(SpinSyncError):
    """A certification pipeline stage failed; the stage name is in the message."""


class ParseError(SpinSyncError):
    """Malformed input file; the message carries the line number."""


class IoError(SpinSyncError):
    """Report emission failed."""
