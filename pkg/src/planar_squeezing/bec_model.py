# bec_model.py

"""
Two-mode (double-well) BEC ground states as a route to planar squeezing.

With J = N/2 and conserved terms in N dropped, the two-mode Hamiltonian
kappa (a^dag b + b^dag a) + g/2 (a^dag a^dag a a + b^dag b^dag b b) becomes
H = 2 kappa J_X + g J_Z^2. For attractive g < 0 this equals
-g |J_par - J_0|^2 up to a constant, with J_0 = (kappa/g, 0), so the ground
state minimizes the planar variance once kappa/|g| matches <J_X>.

Classes:
- BecParams: atom number, interaction and tunneling.
- BecScanPoint: ground-state variances at one coupling ratio.
- BecModel: Hamiltonian, ground state, scans and the critical coupling.

"""
import logging
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed
from scipy import optimize

from .bound_solver import AsymptoticBounds, refine_fixed_point
from .config import thread_limit
from .exceptions import DegenerateGroundError, NonConvergenceError
from .spin_core import SpinAlgebra, SpinQuantumNumber, SpinState, build_operator_set
from .tridiagonal import TridiagonalMatrix, ground_state

logger = logging.getLogger(__name__)

SCAN_COLUMNS = ["ratio", "var_x", "var_y", "var_z", "planar_sum", "mean_x"]
SEED_BRACKET = 1.05


@dataclass(frozen=True)
class BecParams:
    """
    Double-well parameters.

    Attributes
    ----------
    n_atoms : int
        Total atom number N = 2J.
    g : float
        Intra-well interaction, negative when attractive.
    kappa : float
        Inter-well tunneling rate, in the same units as g.
    """

    n_atoms: int
    g: float
    kappa: float

    def __post_init__(self):
        if int(self.n_atoms) != self.n_atoms or self.n_atoms < 1:
            raise ValueError(f"n_atoms must be a positive integer, got {self.n_atoms}")
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")

    @classmethod
    def from_ratio(cls, n_atoms, ratio):
        """
        Parameters with |g| = 1 and kappa chosen so that N g / kappa = ratio.

        A zero ratio means no interaction (g = 0, kappa = 1).
        """
        if ratio == 0:
            return cls(n_atoms, 0.0, 1.0)
        return cls(n_atoms, float(np.sign(ratio)), n_atoms / abs(ratio))

    @property
    def j(self):
        return SpinQuantumNumber(int(self.n_atoms))

    @property
    def ratio(self):
        return self.n_atoms * self.g / self.kappa


@dataclass(frozen=True)
class BecScanPoint:
    """Ground-state variances at one coupling ratio; NaN values when degenerate."""

    ratio: float
    var_x: float
    var_y: float
    var_z: float
    planar_sum: float
    mean_x: float
    degenerate: bool = False

    def to_dict(self):
        return {
            "ratio": self.ratio,
            "var_x": self.var_x,
            "var_y": self.var_y,
            "var_z": self.var_z,
            "planar_sum": self.planar_sum,
            "mean_x": self.mean_x,
            "degenerate": self.degenerate,
        }

    @classmethod
    def from_dict(cls, payload):
        return cls(**payload)


class BecModel:
    """
    Exact diagonalization of the two-mode BEC in the spin picture.

    Methods
    -------
    build_hamiltonian(params)
        Tridiagonal matrix of 2 kappa J_X + g J_Z^2.
    ground_state(params)
        Ground state with <J_X> >= 0.
    variance_scan(n_atoms, ratio_min, ratio_max, steps)
        Ground-state variances along a grid of N g / kappa.
    critical_coupling(n_atoms, tol)
        Ratio minimizing the planar variance and the minimum itself.
    """

    @staticmethod
    def build_hamiltonian(params):
        """
        H = 2 kappa J_X + g J_Z^2 in the J_Z eigenbasis.

        Parameters
        ----------
        params : BecParams

        Returns
        -------
        TridiagonalMatrix
            Diagonal g m^2, off-diagonal kappa sqrt(J(J+1) - m(m+1)).
        """
        operators = build_operator_set(params.j)
        return TridiagonalMatrix(
            params.g * operators.jz_diagonal**2,
            params.kappa * operators.ladder_superdiagonal,
        )

    @staticmethod
    def energy(params, state):
        """
        <H> on a state given in the reporting frame of `ground_state`.

        The (-1)^k phases are undone before evaluating, so the ground state
        returns the lowest eigenvalue. Conserved terms are dropped.
        """
        amplitudes = state.amplitudes * (-1.0) ** np.arange(state.j.dim)
        return BecModel.build_hamiltonian(params).expectation(amplitudes)

    @staticmethod
    def ground_state(params):
        """
        Non-degenerate ground state, reported with <J_X> >= 0.

        For kappa > 0 the raw ground state has <J_X> <= 0; the phases (-1)^k
        (a rotation by pi about Z) flip it to the positive representative.

        Parameters
        ----------
        params : BecParams

        Returns
        -------
        SpinState

        Raises
        ------
        DegenerateGroundError
            If the two lowest levels coincide to 1e-12 relative.
        """
        ground = ground_state(BecModel.build_hamiltonian(params), check_degeneracy=True)
        parity = (-1.0) ** np.arange(ground.vector.size)
        vector = ground.vector * parity
        if vector[np.argmax(np.abs(vector))] < 0:
            vector = -vector
        return SpinState(params.j, vector)

    @staticmethod
    def scan_point(n_atoms, ratio):
        """One BecScanPoint; a degenerate ground state gives a flagged NaN row."""
        params = BecParams.from_ratio(n_atoms, ratio)
        try:
            moments = SpinAlgebra.moments(BecModel.ground_state(params))
        except DegenerateGroundError as exc:
            logger.warning("ratio %.6g: %s", ratio, exc)
            nan = float("nan")
            return BecScanPoint(float(ratio), nan, nan, nan, nan, nan, degenerate=True)
        return BecScanPoint(
            ratio=float(ratio),
            var_x=moments.var_x,
            var_y=moments.var_y,
            var_z=moments.var_z,
            planar_sum=moments.planar_sum,
            mean_x=float(moments.mean[0]),
        )

    @staticmethod
    def variance_scan(n_atoms, ratio_min, ratio_max, steps, n_jobs=None):
        """
        Ground-state variances on an even grid of N g / kappa.

        Parameters
        ----------
        n_atoms : int
        ratio_min, ratio_max : float
            Grid end points, inclusive.
        steps : int
            Number of grid points, at least 2.
        n_jobs : int, optional
            Worker threads, by default `thread_limit()`.

        Returns
        -------
        list of BecScanPoint
        """
        if steps < 2:
            raise ValueError("a scan needs at least 2 steps")
        ratios = np.linspace(ratio_min, ratio_max, steps)
        workers = n_jobs or thread_limit()
        return Parallel(n_jobs=workers, prefer="threads")(
            delayed(BecModel.scan_point)(n_atoms, ratio) for ratio in ratios
        )

    @staticmethod
    def critical_coupling(n_atoms, tol=1e-10):
        """
        Attractive coupling at which the ground state reaches C_J.

        A bounded Brent search on the planar variance, bracketed between
        1.05 times the seed -N / <J_X>_asym and -N / J, is refined with the
        fixed-point condition kappa/|g| = <J_X>. The asymptotic <J_X> falls
        below the exact one, so the optimum lies above the seed. Degenerate
        points inside the bracket score J(J+1), above any planar variance.

        Parameters
        ----------
        n_atoms : int
            At least 2.
        tol : float, optional
            Tolerance on kappa/|g| - <J_X>, by default 1e-10.

        Returns
        -------
        tuple of float
            (ratio, planar_sum) at the optimum.
        """
        if n_atoms < 2:
            raise ValueError("critical coupling needs n_atoms >= 2")
        j = SpinQuantumNumber(int(n_atoms))
        seed_mean = AsymptoticBounds.asymptotic_moments(j).mean_x
        seed = -n_atoms / seed_mean
        bounds = (SEED_BRACKET * seed, -n_atoms / j.value)
        logger.debug("N=%d: seed ratio %.6g, bracket %s", n_atoms, seed, bounds)

        def planar(ratio):
            try:
                state = BecModel.ground_state(BecParams.from_ratio(n_atoms, ratio))
            except DegenerateGroundError:
                logger.debug("N=%d: ratio %.6g degenerate inside the search", n_atoms, ratio)
                return float(j.casimir)
            return SpinAlgebra.moments(state).planar_sum

        search = optimize.minimize_scalar(
            planar, method="bounded", bounds=bounds, options={"xatol": 1e-9}
        )
        if not search.success:
            raise NonConvergenceError(f"critical coupling search failed: {search.message}")

        mean_x_at = lambda lam: float(
            SpinAlgebra.moments(BecModel.ground_state(BecParams.from_ratio(n_atoms, -n_atoms / lam))).mean[0]
        )
        lam = refine_fixed_point(mean_x_at, -n_atoms / float(search.x), tol, label=f"N={n_atoms}")
        ratio = -n_atoms / lam
        if not bounds[0] <= ratio <= bounds[1]:
            raise NonConvergenceError(f"critical ratio {ratio:.6g} left the bracket {bounds}")
        value = planar(ratio)
        logger.info("N=%d: critical ratio %.10g, planar sum %.10g", n_atoms, ratio, value)
        return ratio, value
