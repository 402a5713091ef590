# entanglement.py

"""
Planar-variance entanglement witness for N sites of spin J.

For a separable state the collective planar variance obeys
S2 = Var J_X^tot + Var J_Y^tot >= N C_J, with J_i^tot = sum_k c_{k,i} J_i^k
and c_{k,i} = +-1. A smaller S2 shows entanglement between some of the
sites.

Classes:
- SignConfig: per-site signs of the collective X and Y operators.
- MultiSiteState: pure vector or density operator over N sites.
- WernerParams: singlet mixed with white noise.
- Verdict: witness outcome.
- EntanglementWitness: S2, reference states, closed forms and the witness.

"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Optional, Tuple

import numpy as np
import pandas as pd
import scipy.sparse as sparse

from .bound_solver import BoundSolver
from .exceptions import DimensionTooLargeError
from .spin_core import SpinQuantumNumber, SpinState, as_spin, build_operator_set

logger = logging.getLogger(__name__)

DIMENSION_LIMIT = 10**6
WITNESS_GUARD = 1e-12
WITNESS_COLUMNS = ["j", "p_n", "s2_over_nj", "cj_over_j", "verdict"]


class Verdict(str, Enum):
    ENTANGLED = "Entangled"
    NOT_DETECTED = "NotDetected"


@dataclass(frozen=True)
class SignConfig:
    """
    Signs c_{k,X} and c_{k,Y} of each site in the collective operators.

    Attributes
    ----------
    x_signs : tuple of int
    y_signs : tuple of int
    """

    x_signs: Tuple[int, ...]
    y_signs: Tuple[int, ...]

    def __post_init__(self):
        x_signs, y_signs = tuple(int(s) for s in self.x_signs), tuple(int(s) for s in self.y_signs)
        if len(x_signs) != len(y_signs):
            raise ValueError("x_signs and y_signs need one entry per site")
        if any(s not in (1, -1) for s in x_signs + y_signs):
            raise ValueError("every sign must be +1 or -1")
        object.__setattr__(self, "x_signs", x_signs)
        object.__setattr__(self, "y_signs", y_signs)

    @property
    def n_sites(self):
        return len(self.x_signs)

    @classmethod
    def uniform(cls, n_sites):
        """All signs +1."""
        return cls((1,) * n_sites, (1,) * n_sites)

    @classmethod
    def correlated(cls, n_sites):
        """X signs alternate (+, -, +, ...), Y signs all +1."""
        return cls(tuple((-1) ** k for k in range(n_sites)), (1,) * n_sites)

    def flipped(self):
        """Every X and Y sign reversed."""
        return SignConfig(tuple(-s for s in self.x_signs), tuple(-s for s in self.y_signs))


def _check_dimension(j, n_sites):
    dim = j.dim**n_sites
    if dim > DIMENSION_LIMIT:
        raise DimensionTooLargeError(
            f"(2J+1)^N = {j.dim}^{n_sites} = {dim} exceeds the limit {DIMENSION_LIMIT}"
        )
    return dim


@dataclass(frozen=True, eq=False)
class MultiSiteState:
    """
    State of N spin-J sites, as a pure vector or a density operator.

    Attributes
    ----------
    n_sites : int
    j : SpinQuantumNumber
    vector : numpy.ndarray, optional
        Normalized amplitudes of length (2J+1)^N, site 1 most significant.
    density : numpy.ndarray, optional
        Density operator of shape ((2J+1)^N, (2J+1)^N).
    """

    n_sites: int
    j: SpinQuantumNumber
    vector: Optional[np.ndarray] = field(default=None, repr=False)
    density: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if self.n_sites < 1:
            raise ValueError("n_sites must be positive")
        dim = _check_dimension(self.j, self.n_sites)
        if (self.vector is None) == (self.density is None):
            raise ValueError("give exactly one of vector or density")
        if self.vector is not None:
            vector = np.asarray(self.vector, dtype=complex).ravel()
            if vector.size != dim:
                raise ValueError(f"vector needs {dim} entries, got {vector.size}")
            norm = np.linalg.norm(vector)
            if norm == 0:
                raise ValueError("vector must be non-zero")
            object.__setattr__(self, "vector", vector / norm)
        else:
            density = np.asarray(self.density, dtype=complex)
            if density.shape != (dim, dim):
                raise ValueError(f"density needs shape {(dim, dim)}, got {density.shape}")
            if not np.allclose(density, density.conj().T, atol=1e-10):
                raise ValueError("density operator must be Hermitian")
            trace = np.trace(density).real
            if abs(trace - 1) > 1e-12:
                raise ValueError(f"density operator must have unit trace, got {trace}")
            if np.linalg.eigvalsh(density).min() < -1e-10:
                raise ValueError("density operator must be positive semidefinite")
            object.__setattr__(self, "density", density)

    @property
    def dim(self):
        return self.j.dim**self.n_sites

    @property
    def is_pure(self):
        return self.vector is not None

    def expectation(self, operator):
        """<O> for a sparse or dense operator."""
        if self.is_pure:
            return complex(np.vdot(self.vector, operator @ self.vector))
        return complex(np.trace(operator @ self.density))


@dataclass(frozen=True)
class WernerParams:
    """Spin, number of sites and white-noise weight p_n in [0, 1]."""

    j: SpinQuantumNumber
    n_sites: int
    p_n: float

    def __post_init__(self):
        object.__setattr__(self, "j", as_spin(self.j))
        if not 0 <= self.p_n <= 1:
            raise ValueError(f"p_n must lie in [0, 1], got {self.p_n}")
        if self.n_sites < 1:
            raise ValueError("n_sites must be positive")


def collective_operator(j, n_sites, axis, signs):
    """
    sum_k c_k J_axis^k as a sparse matrix on the N-site space.

    Parameters
    ----------
    j : SpinQuantumNumber
    n_sites : int
    axis : str
        "x", "y" or "z".
    signs : sequence of int
        One sign per site.

    Returns
    -------
    scipy.sparse.csr_matrix
    """
    single = dict(zip("xyz", build_operator_set(j).components()))[axis]
    identity = sparse.identity(j.dim, format="csr")
    total = None
    for site, sign in enumerate(signs):
        factors = [identity] * n_sites
        factors[site] = single
        term = sign * reduce(lambda a, b: sparse.kron(a, b, format="csr"), factors)
        total = term if total is None else total + term
    return total.tocsr()


class EntanglementWitness:
    """
    Planar-variance entanglement witness.

    Parameters
    ----------
    solver : BoundSolver, optional
        Source of C_J; results are cached per spin.
    """

    def __init__(self, solver=None):
        self.solver = solver or BoundSolver()
        self._bounds = {}

    def c_j(self, j):
        """C_J from the exact solver, cached."""
        j = as_spin(j)
        if j not in self._bounds:
            self._bounds[j] = self.solver.cj_exact(j, direct=False).c_exact
        return self._bounds[j]

    @staticmethod
    def s2(state, signs):
        """
        Collective planar variance S2 = Var J_X^tot + Var J_Y^tot.

        Parameters
        ----------
        state : MultiSiteState
        signs : SignConfig

        Returns
        -------
        float
        """
        if signs.n_sites != state.n_sites:
            raise ValueError("sign configuration and state disagree on the number of sites")
        _check_dimension(state.j, state.n_sites)
        total = 0.0
        for axis, axis_signs in (("x", signs.x_signs), ("y", signs.y_signs)):
            operator = collective_operator(state.j, state.n_sites, axis, axis_signs)
            mean = state.expectation(operator).real
            square = state.expectation(operator @ operator).real
            total += square - mean**2
        return max(float(total), 0.0)

    @staticmethod
    def maximally_entangled_state(j, n_sites):
        """|J, N>_M = (2J+1)^(-1/2) sum_m |J, m>^(x N)."""
        j = as_spin(j)
        dim = _check_dimension(j, n_sites)
        vector = np.zeros(dim)
        # |m, m, ..., m> sits at k * (1 + d + d^2 + ...)
        stride = sum(j.dim**p for p in range(n_sites))
        vector[np.arange(j.dim) * stride] = 1.0
        return MultiSiteState(n_sites, j, vector=vector)

    @staticmethod
    def singlet_state(j):
        """Two-site singlet sum_m (-1)^(J-m) |J, m> |J, -m> / sqrt(2J+1)."""
        j = as_spin(j)
        d = j.dim
        vector = np.zeros(d * d)
        k = np.arange(d)
        vector[k * d + (d - 1 - k)] = (-1.0) ** (j.two_j - k)
        return MultiSiteState(2, j, vector=vector)

    @staticmethod
    def product_state(states):
        """Tensor product of single-site SpinStates."""
        j = states[0].j
        if any(s.j != j for s in states):
            raise ValueError("all sites must share the same spin")
        _check_dimension(j, len(states))
        vector = reduce(np.kron, [s.amplitudes for s in states])
        return MultiSiteState(len(states), j, vector=vector)

    @staticmethod
    def werner_state(params):
        """Explicit two-site rho = p_n I/(2J+1)^2 + (1 - p_n) |S><S|."""
        if params.n_sites != 2:
            raise ValueError("explicit Werner states are built for two sites only")
        singlet = EntanglementWitness.singlet_state(params.j).vector
        dim = singlet.size
        density = params.p_n * np.eye(dim) / dim + (1 - params.p_n) * np.outer(singlet, singlet.conj())
        return MultiSiteState(2, params.j, density=density)

    @staticmethod
    def werner_s2_closed(params):
        """S2 = (2N/3) J(J+1) p_n."""
        return 2 * params.n_sites / 3 * params.j.casimir * params.p_n

    def noise_threshold(self, j):
        """Largest white-noise weight still detected: 3 C_J / (2 J(J+1))."""
        j = as_spin(j)
        if j.two_j == 0:
            raise ValueError("the noise threshold needs J > 0")
        return 3 * self.c_j(j) / (2 * j.casimir)

    def witness(self, s2_value, n_sites, j):
        """
        Entangled iff S2 < N C_J - 1e-12; values on the boundary are not detected.

        Returns
        -------
        Verdict
        """
        bound = n_sites * self.c_j(j)
        return Verdict.ENTANGLED if s2_value < bound - WITNESS_GUARD else Verdict.NOT_DETECTED

    def witness_table(self, j_values, p_grid, n_sites=2):
        """
        Normalized Werner S2 against C_J / J on a grid of noise weights.

        Returns
        -------
        pandas.DataFrame
            Columns j, p_n, s2_over_nj, cj_over_j, verdict.
        """
        rows = []
        for j in (as_spin(v) for v in j_values):
            cj_over_j = self.c_j(j) / j.value
            logger.debug("J = %s: noise threshold %.6g", j.value, self.noise_threshold(j))
            for p_n in p_grid:
                s2 = self.werner_s2_closed(WernerParams(j, n_sites, p_n))
                rows.append({
                    "j": j.value,
                    "p_n": float(p_n),
                    "s2_over_nj": s2 / (n_sites * j.value),
                    "cj_over_j": cj_over_j,
                    "verdict": self.witness(s2, n_sites, j).value,
                })
        return pd.DataFrame(rows, columns=WITNESS_COLUMNS)


def random_product_state(j, n_sites, rng):
    """Product of independent random single-site states."""
    j = as_spin(j)
    return EntanglementWitness.product_state([SpinState.random(j, rng) for _ in range(n_sites)])
