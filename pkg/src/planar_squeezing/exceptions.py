"""
Error hierarchy for the planar squeezing package.

"""


class PlanarSqueezingError(Exception):
    """Base class for every error raised by this package."""


class InvalidSpinError(PlanarSqueezingError, ValueError):
    """Spin quantum number is negative or not a half-integer."""


class ConfigError(PlanarSqueezingError, ValueError):
    """Run configuration failed validation."""


class DimensionTooLargeError(PlanarSqueezingError, ValueError):
    """Explicit multi-site construction would exceed the dimension limit."""


class CovarianceAssumptionViolatedError(PlanarSqueezingError, ValueError):
    """Phase formula applied to a state with non-zero X-Y covariance."""


class InsensitivePointError(PlanarSqueezingError):
    """
    Interferometer operated where the mean signal has no phase slope.

    Attributes
    ----------
    alpha : float
        Phase offset phi - theta at which the slope vanished.
    slope : float
        The (near zero) value of the mean signal derivative.
    """

    def __init__(self, alpha, slope):
        super().__init__(
            f"insensitive operating point at alpha={alpha:.6g} (slope {slope:.3g})"
        )
        self.alpha = alpha
        self.slope = slope


class NumericalError(PlanarSqueezingError):
    """A numerical procedure failed."""


class NonConvergenceError(NumericalError):
    """A one-dimensional minimization or fixed-point refinement did not converge."""


class DegenerateGroundError(NumericalError):
    """
    The two lowest eigenvalues coincide, so the ground state is not unique.

    Attributes
    ----------
    eigenvalues : tuple of float
        The two lowest eigenvalues.
    vectors : numpy.ndarray
        Matching eigenvectors as the columns of a (d, 2) array.
    """

    def __init__(self, eigenvalues, vectors):
        super().__init__(
            "degenerate ground state: E0={:.12g}, E1={:.12g}".format(*eigenvalues)
        )
        self.eigenvalues = tuple(eigenvalues)
        self.vectors = vectors
