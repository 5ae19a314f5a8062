"""Exception and warning types shared across the library."""


class AiryBVPError(Exception):
    """Base class for library errors."""


class ConfigError(AiryBVPError):
    """Invalid run configuration (CLI or config file)."""


class BoundaryZeroError(AiryBVPError):
    """|f| fell below the floor at a boundary sample; the contour must be perturbed."""


class UnresolvedPhaseError(AiryBVPError):
    """Adjacent boundary samples differ in argument by nearly pi; sampling is too coarse."""


class BetaZeroError(AiryBVPError):
    """No eigenfunction expansion exists for beta = 0; use the residue machinery instead."""


class NearDegenerateError(AiryBVPError):
    """Biorthogonal normalization is too close to zero for the pair to be trusted."""


class IllPosedGrowthError(AiryBVPError):
    """A series term grows in time, which cannot happen for beta <= 1; spectrum is wrong."""


class NonpositiveTimeError(AiryBVPError):
    """The requested evaluation is only defined for t > 0."""


class SeedDivergedError(AiryBVPError):
    """Newton iteration left the neighbourhood of its asymptotic seed."""


class EmptyInputError(AiryBVPError):
    """An operation that needs data received an empty sequence."""


class CuspProximityWarning(UserWarning):
    """Evaluation point is within 1e-6 of a translated jump, where the
    transform's logarithmic singularity dominates the value."""
