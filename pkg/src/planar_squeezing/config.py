"""

Run configuration and environment handling.

Classes:
- RunConfig: validated parameters of one CLI invocation.

"""
import logging
import os
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .exceptions import ConfigError, InvalidSpinError
from .spin_core import SpinQuantumNumber

logger = logging.getLogger(__name__)

THREADS_ENV = "PLANAR_SQUEEZE_THREADS"
COMMANDS = ("bounds", "state", "bec", "phase", "witness")
FORMATS = ("csv", "json")


def thread_limit():
    """
    Number of worker threads for row-parallel work.

    Returns
    -------
    int
        The value of PLANAR_SQUEEZE_THREADS, or the CPU count when unset.
    """
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return os.cpu_count() or 1
    try:
        limit = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from exc
    if limit < 1:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return limit


def parse_spin_list(text, step=0.5):
    """
    Read a list of spins.

    Accepts a comma list ("0.5,1,2,10") or an inclusive range "a..b" walked
    in increments of `step`.

    Returns
    -------
    list of SpinQuantumNumber
    """
    text = text.strip()
    try:
        if ".." in text:
            start_text, stop_text = text.split("..", 1)
            start = SpinQuantumNumber.from_value(start_text.strip())
            stop = SpinQuantumNumber.from_value(stop_text.strip())
            stride = SpinQuantumNumber.from_value(step).two_j
            if stride < 1:
                raise ConfigError(f"--step must be positive, got {step}")
            return [SpinQuantumNumber(t) for t in range(start.two_j, stop.two_j + 1, stride)]
        return [SpinQuantumNumber.from_value(part.strip()) for part in text.split(",") if part.strip()]
    except InvalidSpinError as exc:
        raise ConfigError(str(exc)) from exc


def parse_ratio_range(text, default_steps=201):
    """Read "a:b[:steps]" into (a, b, steps)."""
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise ConfigError(f"--range must look like a:b[:steps], got {text!r}")
    try:
        low, high = float(parts[0]), float(parts[1])
        steps = int(parts[2]) if len(parts) == 3 else default_steps
    except ValueError as exc:
        raise ConfigError(f"--range must look like a:b[:steps], got {text!r}") from exc
    return low, high, steps


def parse_probability_grid(text):
    """Read "a:b:step" into an inclusive grid of noise probabilities."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"--pn must look like a:b:step, got {text!r}")
    try:
        low, high, step = (float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"--pn must look like a:b:step, got {text!r}") from exc
    if step <= 0 or not 0 <= low <= high <= 1:
        raise ConfigError(f"--pn needs 0 <= a <= b <= 1 and step > 0, got {text!r}")
    count = int(np.floor((high - low) / step + 1e-9)) + 1
    return tuple(float(round(low + k * step, 12)) for k in range(count))


@dataclass(frozen=True)
class RunConfig:
    """
    Validated parameters for one CLI command.

    Attributes
    ----------
    command : str
        One of COMMANDS.
    spins : tuple of SpinQuantumNumber
        Spins to evaluate (bounds, state, phase, witness).
    n_atoms : int, optional
        Atom number for `bec`, or number of sites for `witness`.
    ratio_range : tuple, optional
        (low, high, steps) of the Ng/kappa scan.
    grid : int
        Number of phase offsets for `phase`.
    p_grid : tuple of float
        Noise probabilities for `witness`.
    scaling : bool
        Emit the j,delta_phi_min table instead of a phase scan.
    output_path : str
        Destination file, "-" for stdout.
    format : str
        "csv" or "json".
    seed : int
        Seed for randomized cross-check paths.
    """

    command: str
    spins: Tuple[SpinQuantumNumber, ...] = ()
    n_atoms: Optional[int] = None
    ratio_range: Optional[Tuple[float, float, int]] = None
    grid: int = 64
    p_grid: Tuple[float, ...] = ()
    scaling: bool = False
    output_path: str = "-"
    format: str = "csv"
    seed: int = 0
    threads: int = field(default_factory=thread_limit)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"--format must be one of {FORMATS}")
        if self.command in ("bounds", "state", "phase", "witness"):
            if not self.spins:
                raise ConfigError(f"{self.command} needs at least one --j value")
            if any(j.two_j < 1 for j in self.spins):
                raise ConfigError("every J must be at least 1/2")
        if self.command == "state" and len(self.spins) != 1:
            raise ConfigError("state takes exactly one --j value")
        if self.command == "phase" and not self.scaling and len(self.spins) != 1:
            raise ConfigError("phase takes one --j value unless --scaling is given")
        if self.command == "phase" and self.grid < 1:
            raise ConfigError("--grid must be positive")
        if self.command == "bec":
            if self.n_atoms is None or self.n_atoms < 1:
                raise ConfigError("bec needs --n >= 1")
            if self.ratio_range is None:
                raise ConfigError("bec needs --range a:b[:steps]")
            low, high, steps = self.ratio_range
            if steps < 2 or not low < high:
                raise ConfigError("--range needs a < b and at least 2 steps")
        if self.command == "witness":
            if not self.p_grid:
                raise ConfigError("witness needs --pn a:b:step")
            if self.n_atoms is not None and self.n_atoms < 1:
                raise ConfigError("--n must be positive")

    @classmethod
    def from_args(cls, args):
        """
        Build a RunConfig from an argparse namespace.

        Parameters
        ----------
        args : argparse.Namespace

        Returns
        -------
        RunConfig
        """
        spins = parse_spin_list(args.j, getattr(args, "step", 0.5)) if getattr(args, "j", None) else []
        ratio_range = parse_ratio_range(args.range) if getattr(args, "range", None) else None
        p_grid = parse_probability_grid(args.pn) if getattr(args, "pn", None) else ()
        config = cls(
            command=args.command,
            spins=tuple(spins),
            n_atoms=getattr(args, "n", None),
            ratio_range=ratio_range,
            grid=getattr(args, "grid", 64),
            p_grid=p_grid,
            scaling=getattr(args, "scaling", False),
            output_path=args.out,
            format=args.format,
            seed=args.seed,
        )
        logger.info("run configuration: %s", config)
        return config
