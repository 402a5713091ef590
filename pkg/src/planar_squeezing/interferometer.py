# interferometer.py

"""
Single-shot phase estimation with a two-mode interferometer.

The output number difference N+ - N- of a 50:50 beam splitter behind phase
shifts phi and theta equals 2 J_X(phi), where
J_X(phi) = J_X cos(alpha) + J_Y sin(alpha) and alpha = phi - theta. All mode
physics therefore reduces to Z rotations of the input spin state.

Classes:
- PhaseSetting: unknown and reference phases.
- OutputDistribution: number-difference outcomes and their probabilities.
- Interferometer: phase errors, noise bound, output statistics and scaling.

"""
import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from scipy import linalg

from .bound_solver import AsymptoticBounds, BoundSolver
from .config import thread_limit
from .exceptions import CovarianceAssumptionViolatedError, InsensitivePointError
from .scaling_analysis import ScalingModeler
from .spin_core import SpinAlgebra, SpinState, as_spin, build_operator_set

logger = logging.getLogger(__name__)

INSENSITIVE_THRESHOLD = 1e-9
COVARIANCE_TOLERANCE = 1e-8


def reduce_angle(angle):
    """Map an angle into (-pi, pi]."""
    reduced = np.mod(angle, 2 * np.pi)
    if reduced > np.pi:
        reduced -= 2 * np.pi
    return float(reduced)


@dataclass(frozen=True)
class PhaseSetting:
    """Unknown phase phi and reference phase theta, in radians."""

    phi: float
    theta: float = 0.0

    @property
    def alpha(self):
        """phi - theta reduced to (-pi, pi]."""
        return reduce_angle(self.phi - self.theta)


@dataclass(frozen=True, eq=False)
class OutputDistribution:
    """
    Distribution of the output number difference.

    Attributes
    ----------
    outcomes : numpy.ndarray
        Values 2m for the J_X eigenvalues m = -J..J.
    probabilities : numpy.ndarray
        Matching probabilities, summing to one.
    """

    outcomes: np.ndarray = field(repr=False)
    probabilities: np.ndarray = field(repr=False)

    def mean(self):
        return float(self.outcomes @ self.probabilities)

    def variance(self):
        return float((self.outcomes - self.mean()) ** 2 @ self.probabilities)


@dataclass(frozen=True, eq=False)
class JxEigenbasis:
    """J_X eigenvalues in ascending order and eigenvectors as columns."""

    eigenvalues: np.ndarray = field(repr=False)
    vectors: np.ndarray = field(repr=False)


class Interferometer:
    """
    Phase noise of a two-mode interferometer fed with a spin state.

    The J_X eigenbasis is computed once per spin and kept on the instance.

    Parameters
    ----------
    solver : BoundSolver, optional
        Solver used for optimal states in `scaling_study`.
    """

    def __init__(self, solver=None):
        self.solver = solver or BoundSolver()
        self._eigenbases = {}

    def jx_eigenbasis(self, j):
        """
        Eigen-decomposition of J_X; each eigenvector has its first non-zero
        component positive.

        Parameters
        ----------
        j : SpinQuantumNumber

        Returns
        -------
        JxEigenbasis
        """
        j = as_spin(j)
        if j not in self._eigenbases:
            operators = build_operator_set(j)
            if j.dim == 1:
                values, vectors = np.zeros(1), np.ones((1, 1))
            else:
                values, vectors = linalg.eigh_tridiagonal(
                    np.zeros(j.dim), operators.ladder_superdiagonal / 2
                )
            for column in range(vectors.shape[1]):
                nonzero = np.flatnonzero(np.abs(vectors[:, column]) > 1e-12)
                if nonzero.size and vectors[nonzero[0], column] < 0:
                    vectors[:, column] *= -1
            self._eigenbases[j] = JxEigenbasis(values, vectors)
        return self._eigenbases[j]

    @staticmethod
    def angular_noise(moments, alpha):
        """Var J_X(phi) = Var J_X cos^2 + Var J_Y sin^2 + 2 Cov_XY sin cos."""
        c, s = np.cos(alpha), np.sin(alpha)
        covariance = moments.covariance[0, 1]
        return float(moments.var_x * c**2 + moments.var_y * s**2 + 2 * covariance * s * c)

    @staticmethod
    def phase_uncertainty(moments, alpha):
        """
        Single-shot phase error by error propagation.

        Delta phi = sqrt(Var J_X cos^2 a + Var J_Y sin^2 a) / |<J_Y> cos a - <J_X> sin a|

        Parameters
        ----------
        moments : SpinMoments
            Moments of the input state; the symmetrized X-Y covariance must
            vanish.
        alpha : float
            phi - theta in radians.

        Returns
        -------
        float

        Raises
        ------
        CovarianceAssumptionViolatedError
            If |Cov(J_X, J_Y)| exceeds 1e-8.
        InsensitivePointError
            If the signal slope is below 1e-9 in magnitude.
        """
        covariance = moments.covariance[0, 1]
        if abs(covariance) > COVARIANCE_TOLERANCE:
            raise CovarianceAssumptionViolatedError(
                f"phase formula needs Cov(J_X, J_Y) = 0, got {covariance:.3g}"
            )
        c, s = np.cos(alpha), np.sin(alpha)
        slope = moments.mean[1] * c - moments.mean[0] * s
        if abs(slope) < INSENSITIVE_THRESHOLD:
            raise InsensitivePointError(alpha, slope)
        return float(np.sqrt(moments.var_x * c**2 + moments.var_y * s**2) / abs(slope))

    @staticmethod
    def noise_bound(moments):
        """Planar variance sum, an upper bound on Var J_X(phi) at every phase."""
        return moments.planar_sum

    def output_distribution(self, state, setting):
        """
        Exact distribution of N+ - N- for an input state.

        The state is rotated by -alpha about Z so that J_X of the rotated
        state equals J_X(phi) of the input, then projected onto the J_X
        eigenbasis.

        Parameters
        ----------
        state : SpinState
        setting : PhaseSetting

        Returns
        -------
        OutputDistribution
        """
        rotated = SpinAlgebra.rotate_about_z(state, -setting.alpha)
        basis = self.jx_eigenbasis(state.j)
        probabilities = np.abs(basis.vectors.T @ rotated.amplitudes) ** 2
        probabilities /= probabilities.sum()
        return OutputDistribution(2 * state.j.m_values, probabilities)

    @staticmethod
    def phase_grid(points):
        """`points` offsets -pi + 2 pi k / points, k = 1..points, covering (-pi, pi]."""
        return -np.pi + 2 * np.pi * np.arange(1, points + 1) / points

    def phase_scan(self, moments, points):
        """
        Delta phi across a grid of phase offsets.

        Insensitive points are kept as NaN rows.

        Returns
        -------
        pandas.DataFrame
            Columns alpha, delta_phi.
        """
        rows = []
        for alpha in self.phase_grid(points):
            try:
                delta_phi = self.phase_uncertainty(moments, alpha)
            except InsensitivePointError as exc:
                logger.warning("%s", exc)
                delta_phi = float("nan")
            rows.append({"alpha": float(alpha), "delta_phi": delta_phi})
        return pd.DataFrame(rows, columns=["alpha", "delta_phi"])

    @staticmethod
    def coherent_phase_uncertainty(j):
        """Shot-noise limit 1 / sqrt(2J) of an X coherent state at alpha = pi/2."""
        return 1 / np.sqrt(2 * as_spin(j).value)

    @staticmethod
    def asymptotic_phase_uncertainty(j):
        """sqrt(C_J) / J with the fitted closed form for C_J."""
        value = as_spin(j).value
        return float(np.sqrt(AsymptoticBounds.cj_asymptotic(value)) / value)

    def optimal_phase_uncertainty(self, j):
        """Delta phi at alpha = pi/2 for the exact optimal state of spin j."""
        result = self.solver.cj_exact(j, direct=False)
        return self.phase_uncertainty(result.optimal_moments, np.pi / 2)

    def scaling_study(self, j_values, coherent=False, n_jobs=None):
        """
        Fit the exponent of Delta phi(alpha = pi/2) against J.

        Parameters
        ----------
        j_values : list
            At least 4 spins spanning at least one decade.
        coherent : bool, optional
            Use X coherent states instead of optimal states, by default False.
        n_jobs : int, optional
            Worker threads, by default `thread_limit()`.

        Returns
        -------
        ScalingFit
        """
        spins = [as_spin(j) for j in j_values]
        values = np.array([j.value for j in spins])
        if len(spins) < 4 or values.max() < 10 * values.min():
            raise ValueError("scaling_study needs >= 4 spins spanning at least a decade")
        return self.fit_scaling(*self.scaling_points(spins, coherent=coherent, n_jobs=n_jobs))

    def scaling_points(self, j_values, coherent=False, n_jobs=None):
        """
        Delta phi at alpha = pi/2 for each spin, computed in parallel.

        Returns
        -------
        tuple of numpy.ndarray
            (J values, Delta phi values) in input order.
        """
        spins = [as_spin(j) for j in j_values]
        if coherent:
            phase_of = lambda j: self.phase_uncertainty(
                SpinAlgebra.moments(SpinState.coherent_x(j)), np.pi / 2
            )
        else:
            phase_of = self.optimal_phase_uncertainty
        workers = n_jobs or thread_limit()
        errors = Parallel(n_jobs=workers, prefer="threads")(delayed(phase_of)(j) for j in spins)
        return np.array([float(j.value) for j in spins]), np.asarray(errors, dtype=float)

    @staticmethod
    def fit_scaling(values, errors):
        """Power-law fit of Delta phi against J."""
        return ScalingModeler().fit_power_law(values, errors)
