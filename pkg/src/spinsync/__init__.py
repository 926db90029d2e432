"""Spinning transforms from weighted to unweighted Kuramoto networks.

The package builds k-spinnings of weighted graphs, integrates and
classifies the homogeneous Kuramoto gradient flow, certifies equilibrium
stability spectrally, and emits machine-checkable non-synchronization
certificates for a family of graphs whose density approaches 11/16.
"""

from .errors import (
    CertificationFailedError,
    DegenerateOrderError,
    DimensionMismatchError,
    DuplicateEdgeError,
    GraphError,
    InvalidParamsError,
    IoError,
    KTooSmallError,
    LoopEdgeError,
    MatchFailureError,
    NoConvergenceError,
    NonUniformFiberError,
    NotAnEquilibriumError,
    NotSymmetricError,
    ParseError,
    SpinSyncError,
    SpinTooSmallError,
    ThresholdError,
    VertexOutOfRangeError,
    ZeroWeightError,
)
from .graphs import DensityReport, SpinGraph, WeightedGraph, density_report, quotient_check, spin
from .dynamics import (
    CONSENSUS_TOL,
    EQ_TOL,
    MATCH_TOL,
    Classification,
    McReport,
    TrajectoryResult,
    canonical_phases,
    classify,
    integrate,
    monte_carlo,
    phase_spread,
    potential,
    residual,
    rhs,
    rotation_distance,
)
from .spectral import JACOBI_AUTO_MAX, StabilityVerdict, SymSpectrum, eigen, hessian, stability
from .lifting import (
    LiftReport,
    equilibrium_correspondence,
    find_equilibrium,
    lift_phases,
    spectral_correspondence,
)
from .family import (
    FamilyParams,
    basis_eigenvalues,
    closed_form_spectrum,
    eigenvector_basis,
    family_equilibrium,
    family_graph,
    scaled_hessian,
    stability_criterion,
    tilt_angle,
)
from .certificates import (
    CLAIMED_FIRST_K,
    LIMIT_RATIO,
    BoundCertificate,
    ClaimRow,
    DensityRow,
    PerturbationCheck,
    SpectrumSummary,
    certificate_degree,
    certificate_params,
    certify,
    confront_claims,
    density_sequence,
    first_k_exceeding,
    mu_paper,
    mu_strong,
)
from .fileio import (
    density_rows_csv,
    emit_report,
    format_graph,
    json_dumps,
    parse_graph_file,
    parse_graph_text,
    parse_phases_file,
    to_jsonable,
    write_graph,
)

__version__ = "0.1.0"
