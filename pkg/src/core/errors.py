"""
src/core/errors.py

Exception hierarchy shared by every package of the lab.
"""


class PeelingLabError(Exception):
    """Base class for all errors raised by the lab."""


class ContractViolation(PeelingLabError):
    """Valence or shape mismatch, or an invalid contraction count."""


class ConventionError(PeelingLabError):
    """A soldering-set identity failed; the message names the identity."""


class FrameSingularityError(PeelingLabError):
    """The null tetrad was requested on (or too close to) the axis or at r = 0."""


class NonMembershipError(PeelingLabError):
    """A weighted norm diverges according to the exponent bookkeeping."""


class ResolutionError(PeelingLabError):
    """A grid field is under-resolved or a round trip missed its tolerance."""


class PreconditionError(PeelingLabError):
    """Hertz data are not divergence free or carry a nonzero mean."""


class OrderCapError(PeelingLabError):
    """A wave derivative exceeds the configured maximal order."""


class ExcludedWeightError(PeelingLabError):
    """Integer weight, or a weight on the boundary between decay cases."""


class ConfigError(PeelingLabError):
    """Unknown key or invalid value in a run configuration."""


class FitError(PeelingLabError):
    """Too few samples or nonpositive magnitudes handed to a decay fit."""


class OrthogonalityError(PeelingLabError):
    """Data are not L2-orthogonal to a twistor image within tolerance."""
