# bound_solver.py

"""
The planar uncertainty bound C_J and the states that saturate it.

C_J is the minimum of Var J_X + Var J_Y over all pure spin-J states. Writing
-<J_X>^2 = min over lambda of (lambda^2 - 2 lambda <J_X>) turns the problem
into

    C_J = min over lambda of [E0(lambda) + lambda^2],

where E0(lambda) is the ground energy of the tridiagonal operator
H(lambda) = J(J+1) - J_Z^2 - 2 lambda J_X. At the optimum lambda equals the
ground-state <J_X>.

Classes:
- BoundResult: C_J by every method plus the optimal state and its moments.
- AsymptoticMoments: large-J closed forms for the optimal-state moments.
- AsymptoticBounds: closed-form and variational large-J results.
- BoundSolver: exact and direct numerical minimization.

"""
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from joblib import Parallel, delayed
from scipy import optimize

from .config import thread_limit
from .exceptions import NonConvergenceError
from .spin_core import SpinAlgebra, SpinMoments, SpinQuantumNumber, SpinState, as_spin, ladder_coefficients
from .tridiagonal import TridiagonalMatrix, ground_energy, ground_state

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
DEFAULT_RESTARTS = 8


@dataclass(frozen=True, eq=False)
class BoundResult:
    """
    Planar bound for one spin.

    Attributes
    ----------
    j : SpinQuantumNumber
    c_exact : float
        Bound from the lambda-parameterized ground-state construction.
    c_direct : float or None
        Bound from quasi-Newton minimization over amplitudes, None if skipped.
    c_asymptotic : float or None
        Fitted closed form, None for J = 0.
    lambda_star : float
        Fixed point lambda = <J_X>.
    optimal_state : SpinState
    optimal_moments : SpinMoments
    """

    j: SpinQuantumNumber
    c_exact: float
    c_direct: Optional[float]
    c_asymptotic: Optional[float]
    lambda_star: float
    optimal_state: SpinState = field(repr=False)
    optimal_moments: SpinMoments = field(repr=False)

    @property
    def heisenberg_ratio(self):
        """dJ_Y dJ_Z / (|<J_X>|/2); 1 for a state saturating the Y-Z Heisenberg relation."""
        moments = self.optimal_moments
        return float(np.sqrt(moments.var_y * moments.var_z) / (abs(moments.mean[0]) / 2))

    @property
    def rel_err_asymptotic(self):
        if self.c_asymptotic is None or self.c_exact == 0:
            return None
        return abs(self.c_asymptotic - self.c_exact) / self.c_exact

    def to_dict(self):
        return {
            "two_j": self.j.two_j,
            "j": self.j.value,
            "c_exact": self.c_exact,
            "c_direct": self.c_direct,
            "c_asymptotic": self.c_asymptotic,
            "lambda_star": self.lambda_star,
            "optimal_state": self.optimal_state.to_dict(),
            "optimal_moments": self.optimal_moments.to_dict(),
        }

    @classmethod
    def from_dict(cls, payload):
        return cls(
            j=SpinQuantumNumber(payload["two_j"]),
            c_exact=payload["c_exact"],
            c_direct=payload["c_direct"],
            c_asymptotic=payload["c_asymptotic"],
            lambda_star=payload["lambda_star"],
            optimal_state=SpinState.from_dict(payload["optimal_state"]),
            optimal_moments=SpinMoments.from_dict(payload["optimal_moments"]),
        )


@dataclass(frozen=True)
class AsymptoticMoments:
    """Large-J predictions for the optimal planar squeezed state."""

    mean_x: float
    var_x: float
    var_y: float
    var_z: float

    @property
    def heisenberg_ratio(self):
        return float(np.sqrt(self.var_y * self.var_z) / (abs(self.mean_x) / 2))

    def as_tuple(self):
        return (self.mean_x, self.var_x, self.var_y, self.var_z)


class AsymptoticBounds:
    """
    Closed-form large-J results.

    Methods
    -------
    cj_asymptotic(j)
        Fitted series in J^(1/3), within 1% of C_J for J >= 5.
    cj_leading_order(j)
        Leading asymptote 3 (2J)^(2/3) / 8.
    gaussian_width(j)
        Optimal Gaussian width (2J)^(-2/3) in x = m / (J + 1/2).
    variational_gaussian_state(j)
        Gaussian trial state with the optimal width.
    asymptotic_moments(j)
        Closed forms for <J_X> and the three variances.
    """

    @staticmethod
    def cj_asymptotic(j):
        value = as_spin(j).value
        if value <= 0:
            raise ValueError("the asymptotic bound needs J > 0")
        return 0.595275 * value ** (2 / 3) - 0.1663 * value ** (1 / 3) + 0.0267

    @staticmethod
    def cj_leading_order(j):
        value = as_spin(j).value
        return 3 * (2 * value) ** (2 / 3) / 8

    @staticmethod
    def gaussian_width(j):
        value = as_spin(j).value
        if value <= 0:
            raise ValueError("the Gaussian width needs J > 0")
        return (2 * value) ** (-2 / 3)

    @staticmethod
    def variational_gaussian_state(j):
        """
        Real symmetric trial state R_m ~ exp(-x^2 / (4 sigma)), x = m / (J + 1/2).

        Parameters
        ----------
        j : SpinQuantumNumber

        Returns
        -------
        SpinState
        """
        j = as_spin(j)
        if j.value < 1:
            raise ValueError("the Gaussian ansatz needs J >= 1")
        sigma = AsymptoticBounds.gaussian_width(j)
        x = j.m_values / j.j_tilde
        return SpinState(j, np.exp(-(x**2) / (4 * sigma)))

    @staticmethod
    def asymptotic_moments(j):
        """
        Large-J moments of the optimal state.

        Returns
        -------
        AsymptoticMoments
            <J_X> ~ J - (J/4)^(1/3) / 2, Var J_X ~ (2J)^(2/3) / 8,
            Var J_Y ~ (2J)^(2/3) / 4, Var J_Z ~ (J^2 / 2)^(2/3).
        """
        value = as_spin(j).value
        if value < 1:
            raise ValueError("asymptotic moments need J >= 1")
        scale = (2 * value) ** (2 / 3)
        return AsymptoticMoments(
            mean_x=value - 0.5 * (value / 4) ** (1 / 3),
            var_x=scale / 8,
            var_y=scale / 4,
            var_z=(value**2 / 2) ** (2 / 3),
        )


def planar_hamiltonian(j, lam):
    """H(lambda) = J(J+1) - J_Z^2 - 2 lambda J_X as a tridiagonal matrix."""
    return TridiagonalMatrix(j.casimir - j.m_values**2, -lam * ladder_coefficients(j))


def _mean_x(j, vector):
    return float(np.sum(vector[:-1] * vector[1:] * ladder_coefficients(j)))


def refine_fixed_point(mean_x_at, lam0, tol, label="lambda"):
    """
    Solve lambda = <J_X>(lambda) by the secant method from lam0.

    Parameters
    ----------
    mean_x_at : callable
        lambda -> ground-state <J_X>.
    lam0 : float
        Starting point, typically from a bounded Brent minimization.
    tol : float
        Required |lambda - <J_X>(lambda)|.

    Returns
    -------
    float
    """
    residual = lambda lam: lam - mean_x_at(lam)
    step = max(1e-6, 1e-6 * abs(lam0))
    try:
        lam = optimize.newton(residual, lam0, x1=lam0 + step, tol=tol / 10, maxiter=100)
    except (RuntimeError, OverflowError) as exc:
        raise NonConvergenceError(f"{label} fixed-point refinement failed: {exc}") from exc
    miss = abs(residual(lam))
    logger.debug("%s fixed point %.15g (residual %.3g)", label, lam, miss)
    if not np.isfinite(lam) or miss > tol:
        raise NonConvergenceError(f"{label} fixed point missed tolerance: residual {miss:.3g} > {tol:.3g}")
    return float(lam)


class BoundSolver:
    """
    Numerical solver for the planar bound C_J.

    Parameters
    ----------
    tol : float, optional
        Tolerance on the lambda fixed point, by default 1e-10.
    restarts : int, optional
        Random restarts of the direct minimization, by default 8.
    seed : int, optional
        Seed of the restart perturbations, by default 0.
    """

    def __init__(self, tol=DEFAULT_TOL, restarts=DEFAULT_RESTARTS, seed=0):
        if tol <= 0:
            raise ValueError("tol must be positive")
        if restarts < 1:
            raise ValueError("restarts must be at least 1")
        self.tol = tol
        self.restarts = restarts
        self.seed = seed

    def optimal_lambda(self, j):
        """
        Locate lambda* on [0, J] and refine it to the fixed point.

        Parameters
        ----------
        j : SpinQuantumNumber

        Returns
        -------
        float
        """
        objective = lambda lam: ground_energy(planar_hamiltonian(j, lam)) + lam**2
        search = optimize.minimize_scalar(
            objective,
            method="bounded",
            bounds=(0.0, j.value),
            options={"xatol": 1e-9 * max(1.0, j.value)},
        )
        if not search.success:
            raise NonConvergenceError(f"lambda search for J={j} failed: {search.message}")
        logger.debug("J=%s bounded search: lambda=%.12g, g=%.12g", j, search.x, search.fun)

        mean_x_at = lambda lam: _mean_x(j, ground_state(planar_hamiltonian(j, lam)).vector)
        lam = refine_fixed_point(mean_x_at, float(search.x), self.tol, label=f"J={j}")
        if not 0 < lam <= j.value + self.tol:
            raise NonConvergenceError(f"J={j}: fixed point {lam:.6g} outside (0, J]")
        return lam

    def cj_exact(self, j, direct=True):
        """
        Exact C_J with the optimal state and its moments.

        Parameters
        ----------
        j : SpinQuantumNumber or float
        direct : bool, optional
            Also run `cj_direct` as a cross-check, by default True.

        Returns
        -------
        BoundResult
        """
        j = as_spin(j)
        if j.two_j == 0:
            state = SpinState.basis(j, 0)
            return BoundResult(j, 0.0, 0.0 if direct else None, None, 0.0, state, SpinAlgebra.moments(state))

        lam = self.optimal_lambda(j)
        state = SpinState(j, ground_state(planar_hamiltonian(j, lam)).vector)
        moments = SpinAlgebra.moments(state)
        c_direct = self.cj_direct(j) if direct else None
        result = BoundResult(
            j=j,
            c_exact=moments.planar_sum,
            c_direct=c_direct,
            c_asymptotic=AsymptoticBounds.cj_asymptotic(j),
            lambda_star=lam,
            optimal_state=state,
            optimal_moments=moments,
        )
        logger.info("C_J for J=%s: %.10g (lambda*=%.10g)", j, result.c_exact, lam)
        return result

    def cj_direct(self, j):
        """
        C_J by quasi-Newton (BFGS) minimization over real symmetric amplitudes.

        Amplitudes satisfy R_m = R_{-m} with zero phases. The first run starts
        from the Gaussian ansatz (uniform amplitudes below J = 1); later runs
        perturb it randomly. The best run is returned.

        Parameters
        ----------
        j : SpinQuantumNumber or float

        Returns
        -------
        float
        """
        j = as_spin(j)
        if j.two_j == 0:
            return 0.0
        k = np.arange(j.dim)
        mirror = np.abs(2 * k - j.two_j) // 2
        n_free = j.two_j // 2 + 1
        diagonal = j.casimir - j.m_values**2
        ladder = ladder_coefficients(j)

        def planar_sum_and_gradient(free):
            r = free[mirror]
            norm = r @ r
            a = r @ (diagonal * r)
            x = np.sum(r[:-1] * r[1:] * ladder)
            dx = np.zeros_like(r)
            dx[:-1] += r[1:] * ladder
            dx[1:] += r[:-1] * ladder
            value = a / norm - (x / norm) ** 2
            grad = (
                2 * diagonal * r / norm
                - 2 * a * r / norm**2
                - 2 * x * dx / norm**2
                + 4 * x**2 * r / norm**3
            )
            return value, np.bincount(mirror, weights=grad, minlength=n_free)

        if j.value >= 1:
            base = AsymptoticBounds.variational_gaussian_state(j).amplitudes.real[j.dim - n_free:]
        else:
            base = np.ones(n_free)
        # base is ordered m = (0 or 1/2)..J, matching the mirror index
        rng = np.random.default_rng(self.seed)
        best = np.inf
        for restart in range(self.restarts):
            start = base if restart == 0 else base + rng.normal(scale=0.2 * np.max(base), size=n_free)
            fit = optimize.minimize(
                planar_sum_and_gradient,
                start,
                jac=True,
                method="BFGS",
                options={"gtol": 1e-11, "maxiter": 20000},
            )
            logger.debug("J=%s restart %d: %.12g (%s)", j, restart, fit.fun, fit.message)
            best = min(best, float(fit.fun))
        return best

    def bound_table(self, j_values, direct=True, n_jobs=None):
        """
        Evaluate cj_exact for several spins in parallel.

        Parameters
        ----------
        j_values : iterable
            Spins as SpinQuantumNumber or numbers.
        direct : bool, optional
            Run the direct cross-check too, by default True.
        n_jobs : int, optional
            Worker threads, by default `thread_limit()`.

        Returns
        -------
        list of BoundResult
            In the order of `j_values`.
        """
        spins = [as_spin(j) for j in j_values]
        workers = n_jobs or thread_limit()
        return Parallel(n_jobs=workers, prefer="threads")(
            delayed(self.cj_exact)(j, direct) for j in spins
        )
