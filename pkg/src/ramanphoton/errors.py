"""Exception and warning types shared across the package."""

from __future__ import annotations


class RamanPhotonError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(RamanPhotonError):
    """Invalid configuration: unknown key, bad value, missing section."""


class QuadratureFailure(RamanPhotonError):
    """An adaptive integral did not reach its error target.

    Attributes
    ----------
    achieved_error : float
        Error estimate at the point of giving up.
    target_error : float
        Requested absolute error.
    """

    def __init__(self, message, achieved_error=float("nan"), target_error=float("nan")):
        super().__init__(message)
        self.achieved_error = achieved_error
        self.target_error = target_error


class PoleOnGrid(RamanPhotonError):
    """An evaluation point coincides with a non-integrable pole."""


class GridMismatch(RamanPhotonError):
    """Two sampled functions do not share a compatible step."""


class EmptySpectrum(RamanPhotonError):
    """Attempted to normalize a spectrum with (numerically) zero mass."""


class EmptyDistribution(RamanPhotonError):
    """Attempted to take moments of a time distribution with zero mass."""


class NormDrift(RamanPhotonError):
    """Discretized propagation violated probability conservation."""


class RecurrenceHorizon(RamanPhotonError):
    """Propagation time too close to the revival time of the mode comb."""


class ResolutionWarning(UserWarning):
    """A spectral feature is too narrow for the output grid."""


class DegenerateDressingWarning(UserWarning):
    """Overdamped drive: shift/width parameterization is at its limit point."""


class PacketTailWarning(UserWarning):
    """Wave packet has non-negligible weight at negative times."""
