# tridiagonal.py

"""
Real symmetric tridiagonal matrices and their ground states.

Spin Hamiltonians built from J_X and functions of J_Z are tridiagonal in the
J_Z eigenbasis. Ground states are found by a full symmetric tridiagonal
eigendecomposition up to DENSE_LIMIT rows and by shifted inverse iteration
above it.

"""
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from .exceptions import DegenerateGroundError, NonConvergenceError

logger = logging.getLogger(__name__)

DENSE_LIMIT = 2001
DEGENERACY_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class TridiagonalMatrix:
    """
    Real symmetric tridiagonal matrix.

    Attributes
    ----------
    diagonal : numpy.ndarray
        Length-d main diagonal.
    offdiagonal : numpy.ndarray
        Length-(d-1) sub/super diagonal.
    """

    diagonal: np.ndarray = field(repr=False)
    offdiagonal: np.ndarray = field(repr=False)

    def __post_init__(self):
        diagonal = np.asarray(self.diagonal, dtype=float)
        offdiagonal = np.asarray(self.offdiagonal, dtype=float)
        if offdiagonal.shape != (max(diagonal.size - 1, 0),):
            raise ValueError("offdiagonal must have exactly one entry fewer than diagonal")
        object.__setattr__(self, "diagonal", diagonal)
        object.__setattr__(self, "offdiagonal", offdiagonal)

    @property
    def dim(self):
        return self.diagonal.size

    def to_dense(self):
        return (
            np.diag(self.diagonal)
            + np.diag(self.offdiagonal, 1)
            + np.diag(self.offdiagonal, -1)
        )

    def matvec(self, vector):
        """Product with a vector without forming the dense matrix."""
        vector = np.asarray(vector)
        result = self.diagonal * vector
        result[:-1] += self.offdiagonal * vector[1:]
        result[1:] += self.offdiagonal * vector[:-1]
        return result

    def expectation(self, vector):
        """<v|H|v> / <v|v>."""
        vector = np.asarray(vector)
        return float(np.real(np.vdot(vector, self.matvec(vector))) / np.real(np.vdot(vector, vector)))


@dataclass(frozen=True, eq=False)
class GroundState:
    """Lowest eigenpair of a tridiagonal matrix plus the gap to the next level."""

    energy: float
    vector: np.ndarray = field(repr=False)
    gap: float


def lowest_eigenvalues(matrix, count=2):
    """
    The `count` lowest eigenvalues, by bisection.

    Parameters
    ----------
    matrix : TridiagonalMatrix
    count : int, optional
        Number of eigenvalues, by default 2.

    Returns
    -------
    numpy.ndarray
    """
    count = min(count, matrix.dim)
    if matrix.dim == 1:
        return matrix.diagonal.copy()
    return linalg.eigvalsh_tridiagonal(
        matrix.diagonal, matrix.offdiagonal, select="i", select_range=(0, count - 1)
    )


def ground_energy(matrix):
    """Lowest eigenvalue only."""
    return float(lowest_eigenvalues(matrix, count=1)[0])


def _inverse_iteration(matrix, shift, max_iter=50):
    d = matrix.dim
    banded = np.zeros((3, d))
    banded[0, 1:] = matrix.offdiagonal
    banded[1, :] = matrix.diagonal - shift
    banded[2, :-1] = matrix.offdiagonal
    vector = np.ones(d) / np.sqrt(d)
    scale = max(1.0, np.max(np.abs(matrix.diagonal)), np.max(np.abs(matrix.offdiagonal), initial=0.0))
    for iteration in range(max_iter):
        vector = linalg.solve_banded((1, 1), banded, vector)
        vector /= np.linalg.norm(vector)
        energy = vector @ matrix.matvec(vector)
        residual = np.linalg.norm(matrix.matvec(vector) - energy * vector)
        if residual <= 1e-11 * scale:
            logger.debug("inverse iteration converged after %d steps", iteration + 1)
            return vector
    raise NonConvergenceError(
        f"inverse iteration did not converge in {max_iter} steps (residual {residual:.3g})"
    )


def ground_state(matrix, check_degeneracy=False):
    """
    Lowest eigenpair of a real symmetric tridiagonal matrix.

    Parameters
    ----------
    matrix : TridiagonalMatrix
    check_degeneracy : bool, optional
        Raise DegenerateGroundError when the two lowest eigenvalues differ by
        less than 1e-12 relative, by default False.

    Returns
    -------
    GroundState
        The eigenvector is normalized and real; its largest-magnitude
        component is positive.
    """
    d = matrix.dim
    if d == 1:
        return GroundState(float(matrix.diagonal[0]), np.ones(1), np.inf)

    if d <= DENSE_LIMIT:
        values, vectors = linalg.eigh_tridiagonal(matrix.diagonal, matrix.offdiagonal)
        values, vectors = values[:2], vectors[:, :2]
    else:
        values = lowest_eigenvalues(matrix, count=2)
        spacing = max(values[1] - values[0], 1e-14 * max(1.0, abs(values[0])))
        vectors = _inverse_iteration(matrix, values[0] - 1e-3 * spacing)[:, None]

    gap = float(values[1] - values[0])
    if check_degeneracy and gap < DEGENERACY_TOLERANCE * max(1.0, abs(values[0])):
        if vectors.shape[1] < 2:
            _, vectors = linalg.eigh_tridiagonal(
                matrix.diagonal, matrix.offdiagonal, select="i", select_range=(0, 1)
            )
        raise DegenerateGroundError(values[:2], vectors)

    vector = vectors[:, 0].copy()
    if vector[np.argmax(np.abs(vector))] < 0:
        vector = -vector
    return GroundState(float(values[0]), vector, gap)
