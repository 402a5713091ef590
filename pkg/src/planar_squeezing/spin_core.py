# spin_core.py

"""
Exact finite-dimensional spin-J algebra.

Array index k of every amplitude vector corresponds to the J_Z eigenvalue
m = k - J, so index 0 is m = -J and index 2J is m = +J.

Classes:
- SpinQuantumNumber: exact (half-)integer spin J.
- SpinOperatorSet: ladder structure and the J_X, J_Y, J_Z matrices.
- SpinState: normalized pure state over the J_Z eigenbasis.
- SpinMoments: first and symmetrized second moments of a state.
- SpinAlgebra: operations on states (moments, rotations, cross-check sums).

"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
import scipy.sparse as sparse
from scipy.special import gammaln

from .exceptions import InvalidSpinError

logger = logging.getLogger(__name__)

AXES = ("x", "y", "z")


@dataclass(frozen=True, order=True)
class SpinQuantumNumber:
    """Spin quantum number stored as two_j so half-integers are exact."""

    two_j: int

    def __post_init__(self):
        if isinstance(self.two_j, bool) or int(self.two_j) != self.two_j:
            raise InvalidSpinError(f"two_j must be an integer, got {self.two_j!r}")
        if self.two_j < 0:
            raise InvalidSpinError(f"two_j must be non-negative, got {self.two_j}")
        object.__setattr__(self, "two_j", int(self.two_j))

    @classmethod
    def from_value(cls, value):
        """
        Build a spin quantum number from J itself.

        Parameters
        ----------
        value : float, int, str or Fraction
            The spin J, e.g. 0.5, "3/2" or 50.

        Returns
        -------
        SpinQuantumNumber
        """
        try:
            twice = Fraction(value) * 2
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise InvalidSpinError(f"cannot read a spin from {value!r}") from exc
        if twice.denominator != 1:
            raise InvalidSpinError(f"J must be a half-integer, got {value!r}")
        return cls(int(twice))

    @property
    def value(self):
        """J as a float."""
        return self.two_j / 2

    @property
    def dim(self):
        """Hilbert space dimension 2J + 1."""
        return self.two_j + 1

    @property
    def j_tilde(self):
        """J + 1/2."""
        return self.value + 0.5

    @property
    def casimir(self):
        """J(J + 1)."""
        return self.value * (self.value + 1)

    @property
    def m_values(self):
        """J_Z eigenvalues -J..J in index order."""
        return np.arange(self.dim) - self.value

    def __str__(self):
        return str(self.two_j // 2) if self.two_j % 2 == 0 else f"{self.two_j}/2"


def as_spin(value):
    """Accept a SpinQuantumNumber or anything SpinQuantumNumber.from_value reads."""
    if isinstance(value, SpinQuantumNumber):
        return value
    return SpinQuantumNumber.from_value(value)


def ladder_coefficients(j):
    """
    Matrix elements <m+1|J_+|m> = sqrt(J(J+1) - m(m+1)) for m = -J..J-1.

    Parameters
    ----------
    j : SpinQuantumNumber

    Returns
    -------
    numpy.ndarray
        Real vector of length 2J.
    """
    m = j.m_values[:-1]
    return np.sqrt(np.clip(j.casimir - m * (m + 1), 0.0, None))


@dataclass(frozen=True, eq=False)
class SpinOperatorSet:
    """
    Spin-J operators in the J_Z eigenbasis.

    J_Z is diagonal, J_X is real tridiagonal with zero diagonal, and J_Y is
    purely imaginary tridiagonal. Sparse forms are built on demand; dense
    arrays are available through `dense`.
    """

    j: SpinQuantumNumber
    jz_diagonal: np.ndarray = field(repr=False)
    ladder_superdiagonal: np.ndarray = field(repr=False)

    def jplus(self):
        """Raising operator as a sparse matrix."""
        return sparse.diags(self.ladder_superdiagonal, -1, shape=(self.j.dim,) * 2, format="csr")

    def jx(self):
        half = self.ladder_superdiagonal / 2
        return sparse.diags([half, half], [-1, 1], shape=(self.j.dim,) * 2, format="csr")

    def jy(self):
        half = self.ladder_superdiagonal / 2
        return sparse.diags(
            [-1j * half, 1j * half], [-1, 1], shape=(self.j.dim,) * 2, format="csr"
        )

    def jz(self):
        return sparse.diags(self.jz_diagonal, 0, shape=(self.j.dim,) * 2, format="csr")

    def components(self):
        """(J_X, J_Y, J_Z) as sparse matrices."""
        return self.jx(), self.jy(), self.jz()

    def dense(self, axis):
        """
        Dense matrix of one component.

        Parameters
        ----------
        axis : str
            One of "x", "y", "z".

        Returns
        -------
        numpy.ndarray
        """
        if axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
        return getattr(self, "j" + axis)().toarray()


@lru_cache(maxsize=64)
def build_operator_set(j):
    """
    Build the operator set of spin j.

    Parameters
    ----------
    j : SpinQuantumNumber

    Returns
    -------
    SpinOperatorSet
    """
    return SpinOperatorSet(
        j=j,
        jz_diagonal=j.m_values.astype(float),
        ladder_superdiagonal=ladder_coefficients(j),
    )


@dataclass(frozen=True, eq=False)
class SpinState:
    """
    Pure state of spin J; amplitudes are normalized on construction.

    Attributes
    ----------
    j : SpinQuantumNumber
    amplitudes : numpy.ndarray
        Complex vector of length 2J + 1, index k <-> m = k - J.
    """

    j: SpinQuantumNumber
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=complex).ravel()
        if amplitudes.shape != (self.j.dim,):
            raise ValueError(
                f"expected {self.j.dim} amplitudes for J={self.j}, got {amplitudes.shape[0]}"
            )
        norm = np.linalg.norm(amplitudes)
        if not np.isfinite(norm) or norm == 0:
            raise ValueError("amplitudes must have a finite, non-zero norm")
        amplitudes = amplitudes / norm
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @classmethod
    def basis(cls, j, m):
        """The J_Z eigenstate |J, m>."""
        index = m + j.value
        if int(index) != index or not 0 <= index < j.dim:
            raise ValueError(f"m={m} is not a valid projection for J={j}")
        amplitudes = np.zeros(j.dim)
        amplitudes[int(index)] = 1.0
        return cls(j, amplitudes)

    @classmethod
    def coherent_x(cls, j):
        """
        Coherent spin state along +X (eigenstate of J_X with eigenvalue J).

        Amplitudes are sqrt(binomial(2J, J+m)) / 2^J, evaluated in log space.
        """
        k = np.arange(j.dim)
        log_amp = 0.5 * (gammaln(j.dim) - gammaln(k + 1) - gammaln(j.dim - k)) - j.value * np.log(2)
        return cls(j, np.exp(log_amp))

    @classmethod
    def random(cls, j, rng):
        """Haar-like random state from complex Gaussian amplitudes."""
        return cls(j, rng.normal(size=j.dim) + 1j * rng.normal(size=j.dim))

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def to_dict(self):
        """JSON-ready form: two_j plus [re, im] pairs."""
        return {
            "two_j": self.j.two_j,
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
        }

    @classmethod
    def from_dict(cls, payload):
        pairs = np.asarray(payload["amplitudes"], dtype=float).reshape(-1, 2)
        return cls(SpinQuantumNumber(payload["two_j"]), pairs[:, 0] + 1j * pairs[:, 1])


@dataclass(frozen=True, eq=False)
class SpinMoments:
    """
    First and symmetrized second moments of a spin state.

    Attributes
    ----------
    mean : numpy.ndarray
        (<J_X>, <J_Y>, <J_Z>).
    second : numpy.ndarray
        3x3 matrix <{J_i, J_j}>/2.
    variances : numpy.ndarray
        (Var J_X, Var J_Y, Var J_Z).
    planar_sum : float
        Var J_X + Var J_Y.
    """

    mean: np.ndarray
    second: np.ndarray
    variances: np.ndarray
    planar_sum: float

    @classmethod
    def from_second_moments(cls, mean, second):
        mean = np.asarray(mean, dtype=float)
        second = np.asarray(second, dtype=float)
        second = (second + second.T) / 2
        variances = np.clip(np.diag(second) - mean**2, 0.0, None)
        return cls(mean, second, variances, float(variances[0] + variances[1]))

    @property
    def covariance(self):
        """Symmetrized covariance matrix."""
        return self.second - np.outer(self.mean, self.mean)

    @property
    def total_spin(self):
        """Trace of the second-moment matrix, J(J+1) for a pure spin-J state."""
        return float(np.trace(self.second))

    @property
    def var_x(self):
        return float(self.variances[0])

    @property
    def var_y(self):
        return float(self.variances[1])

    @property
    def var_z(self):
        return float(self.variances[2])

    def to_dict(self):
        return {
            "mean": [float(v) for v in self.mean],
            "second": [[float(v) for v in row] for row in self.second],
            "variances": [float(v) for v in self.variances],
            "planar_sum": float(self.planar_sum),
        }

    @classmethod
    def from_dict(cls, payload):
        return cls(
            mean=np.asarray(payload["mean"], dtype=float),
            second=np.asarray(payload["second"], dtype=float),
            variances=np.asarray(payload["variances"], dtype=float),
            planar_sum=float(payload["planar_sum"]),
        )


class SpinAlgebra:
    """
    Operations on single-site spin states.

    Methods
    -------
    moments(state)
        First moments, symmetrized second moments and variances.
    rotate_about_z(state, angle)
        Rotate a state about the Z axis.
    index_sum_planar_square(j, amplitudes)
        <J_X^2 + J_Y^2> from the J_Z-basis index sum.
    index_sum_mean_x(j, amplitudes)
        <J_X> of a real-amplitude state from the shifted-index sum.
    """

    @staticmethod
    def moments(state):
        """
        Compute the moments of a state from its operator matrices.

        Symmetrized second moments use <{A, B}>/2 = Re <A psi|B psi> for
        Hermitian A and B.

        Parameters
        ----------
        state : SpinState

        Returns
        -------
        SpinMoments
        """
        operators = build_operator_set(state.j).components()
        psi = state.amplitudes
        images = np.stack([op @ psi for op in operators])
        mean = np.real(images @ psi.conj())
        second = np.real(images.conj() @ images.T)
        return SpinMoments.from_second_moments(mean, second)

    @staticmethod
    def rotate_about_z(state, angle):
        """
        Apply exp(-i angle J_Z) to a state.

        After the rotation <J_X> becomes <J_X> cos(angle) - <J_Y> sin(angle)
        and <J_Y> becomes <J_Y> cos(angle) + <J_X> sin(angle).

        Parameters
        ----------
        state : SpinState
        angle : float
            Rotation angle in radians.

        Returns
        -------
        SpinState
        """
        phases = np.exp(-1j * angle * state.j.m_values)
        return SpinState(state.j, state.amplitudes * phases)

    @staticmethod
    def index_sum_planar_square(j, amplitudes):
        """<J_X^2 + J_Y^2> = -1/4 + sum R_m^2 (J~^2 - m^2) / n."""
        r = np.asarray(amplitudes, dtype=float)
        n = r @ r
        return -0.25 + float(np.sum(r**2 * (j.j_tilde**2 - j.m_values**2)) / n)

    @staticmethod
    def index_sum_mean_x(j, amplitudes):
        """
        <J_X> = sum_M R_{M+} R_{M-} sqrt(J~^2 - M^2) / n over half-shifted M.

        M = m + 1/2 runs over the midpoints between neighbouring projections,
        which makes sqrt(J~^2 - M^2) equal to sqrt((J - m)(J + m + 1)).
        """
        r = np.asarray(amplitudes, dtype=float)
        n = r @ r
        midpoints = j.m_values[:-1] + 0.5
        weights = np.sqrt(np.clip(j.j_tilde**2 - midpoints**2, 0.0, None))
        return float(np.sum(r[:-1] * r[1:] * weights) / n)
