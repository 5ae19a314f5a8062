"""Spectral solver and rational-time revival analysis for the Airy equation
u_t + u_xxx = 0 on (0,1) with u(0,t) = u(1,t) = 0 and u_x(1,t) = beta u_x(0,t).
"""

__version__ = "0.1.0"

from . import beta0, cli, evolution, piecewise, quadrature, revival, rootfinding, spectral
from .beta0 import (
    ResidueExpansion,
    build_residue_expansion,
    characteristic0,
    characteristic0_deriv,
    numerator_minus,
    numerator_plus,
    ray_zeros,
    residue_series_eval,
    weak_revival_report,
)
from .evolution import (
    SolutionSeries,
    boundary_flux_integral,
    build_series,
    dissipation_integral,
    energy_report,
    l2_norm_at,
    second_difference_max,
    weighted_l2_sq_at,
)
from .exceptions import (
    AiryBVPError,
    BetaZeroError,
    BoundaryZeroError,
    ConfigError,
    CuspProximityWarning,
    EmptyInputError,
    IllPosedGrowthError,
    NearDegenerateError,
    NonpositiveTimeError,
    SeedDivergedError,
    UnresolvedPhaseError,
)
from .piecewise import PiecewiseDatum, exp_transform, exp_transform_terms, named_datum
from .revival import (
    GaussSumTable,
    PeriodicProfile,
    RationalTime,
    Singularity,
    g_coefficients,
    gauss_sums,
    periodic_hilbert,
    predict_singularities,
    revival_series,
    revival_superposition,
    superposition_bracket,
)
from .rootfinding import Region, RootReport, find_zeros, winding_count
from .spectral import (
    SpectralPair,
    biorthogonal_normalization,
    boundary_residual,
    characteristic,
    characteristic_deriv,
    characteristic_scaled,
    eigenfunction_eval,
    eigenvalue_seeds,
    enumerate_spectrum,
    inner_with_adjoint,
    make_pair,
)
