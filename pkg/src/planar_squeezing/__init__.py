"""Planar spin squeezing: uncertainty bounds, BEC ground states, phase noise and witnesses."""
from .bec_model import BecModel, BecParams, BecScanPoint
from .bound_solver import AsymptoticBounds, AsymptoticMoments, BoundResult, BoundSolver
from .entanglement import (
    EntanglementWitness,
    MultiSiteState,
    SignConfig,
    Verdict,
    WernerParams,
    random_product_state,
)
from .exceptions import (
    ConfigError,
    CovarianceAssumptionViolatedError,
    DegenerateGroundError,
    DimensionTooLargeError,
    InsensitivePointError,
    InvalidSpinError,
    NonConvergenceError,
    NumericalError,
    PlanarSqueezingError,
)
from .interferometer import Interferometer, OutputDistribution, PhaseSetting
from .scaling_analysis import ScalingFit, ScalingModeler
from .spin_core import SpinAlgebra, SpinMoments, SpinOperatorSet, SpinQuantumNumber, SpinState

__version__ = "0.1.0"
