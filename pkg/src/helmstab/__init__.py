"""Spectral Helmholtz solver on the unit square with stability certification.

Separation-of-variables solutions for mixed Dirichlet/Neumann/impedance
boundary data, closed-form modal norms, wavenumber-explicit stability
certificates, sharpness reproductions, and a finite-difference oracle.
"""

from .eigenbasis import (
    MAX_MODE,
    BasisFamily,
    BoundaryOperator,
    DataNormReport,
    Spectrum,
    basis_value,
    data_norms,
    project,
    select_eigenpairs,
)
from .modal1d import (
    EPS_CUTOFF,
    EigenvalueFamily,
    LiftingFamilyChoice,
    ModalSolution1D,
    ModeRegime,
    ProofQuantities,
    Regime,
    ResonantLiftingError,
    Side,
    classify_mode,
    choose_lifting_family,
    gap_lower_bound,
    proof_quantities,
    stable_hyperbolic_ratios,
    x_mode,
    y_mode_lifting,
)
from .solver import (
    BasisMember,
    BoundaryConfig,
    EnergyMethod,
    EnergyReport,
    Provenance,
    SeriesSolution,
    SourceProfile,
    energy_parseval,
    energy_quadrature,
    evaluate,
    lift_horizontal_data,
    residual_traces,
    solve_source,
    solve_vertical_data,
    source_l2_norm,
    superpose,
)
from .bounds import (
    SHARPNESS_IDS,
    BoundCertificate,
    CertificateViolation,
    SharpnessCase,
    SweepReport,
    TheoremId,
    certify,
    rhs_bound,
    sharpness_case,
    sweep,
)
from .oracle import ComparisonReport, GridSolution, compare, fdm_energy, fdm_solve

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
