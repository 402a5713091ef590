"""

Command-line front end.

Commands:
- bounds: C_J table for a list of spins.
- state: moments of the optimal state for one spin.
- bec: ground-state variances along a scan of Ng/kappa.
- phase: Delta phi across a phase grid, or its minimum per spin with --scaling.
- witness: Werner-state planar variances against C_J over a noise grid.

Exit codes are 0 on success, 2 on usage errors and 3 on numerical failures.

"""
import argparse
import logging
import sys

from .bec_model import BecModel
from .bound_solver import BoundSolver
from .config import FORMATS, RunConfig
from .entanglement import EntanglementWitness
from .exceptions import NumericalError, PlanarSqueezingError
from .interferometer import Interferometer
from .tables import ResultTables

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

# options whose values may start with "-"
_SIGNED_OPTIONS = ("--range",)


def cmd_bounds(config):
    solver = BoundSolver(seed=config.seed)
    results = solver.bound_table(config.spins, direct=True, n_jobs=config.threads)
    frame = ResultTables.bounds_frame(results)
    return frame, [r.to_dict() for r in results]


def cmd_state(config):
    result = BoundSolver(seed=config.seed).cj_exact(config.spins[0], direct=False)
    return ResultTables.state_frame(result), result.to_dict()


def cmd_bec(config):
    low, high, steps = config.ratio_range
    points = BecModel.variance_scan(config.n_atoms, low, high, steps, n_jobs=config.threads)
    best = min((p for p in points if not p.degenerate), key=lambda p: p.planar_sum, default=None)
    if best is not None:
        logger.info("smallest planar sum %.10g at ratio %.6g", best.planar_sum, best.ratio)
    return ResultTables.bec_frame(points), [p.to_dict() for p in points]


def cmd_phase(config):
    interferometer = Interferometer(BoundSolver(seed=config.seed))
    if config.scaling:
        values, errors = interferometer.scaling_points(config.spins, n_jobs=config.threads)
        frame = ResultTables.scaling_frame(values, errors)
        if len(config.spins) >= 2:
            try:
                fit = interferometer.fit_scaling(values, errors)
                logger.info("Delta phi ~ J^%.4f (r2 %.6f)", fit.slope, fit.r2)
            except ValueError as exc:
                logger.info("no scaling fit: %s", exc)
    else:
        moments = interferometer.solver.cj_exact(config.spins[0], direct=False).optimal_moments
        frame = interferometer.phase_scan(moments, config.grid)
    return frame, ResultTables.records(frame)


def cmd_witness(config):
    witness = EntanglementWitness(BoundSolver(seed=config.seed))
    n_sites = config.n_atoms or 2
    frame = witness.witness_table(config.spins, config.p_grid, n_sites=n_sites)
    for j in config.spins:
        logger.info("J=%s: noise threshold %.10g", j, witness.noise_threshold(j))
    return frame, ResultTables.records(frame)


COMMAND_HANDLERS = {
    "bounds": cmd_bounds,
    "state": cmd_state,
    "bec": cmd_bec,
    "phase": cmd_phase,
    "witness": cmd_witness,
}


def build_parser():
    """
    Argument parser with one subcommand per entry of COMMANDS.

    Returns
    -------
    argparse.ArgumentParser
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="-", help="output path, '-' for stdout (default)")
    common.add_argument("--format", choices=FORMATS, default="csv")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized cross-checks")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")

    parser = argparse.ArgumentParser(
        prog="planar-squeeze",
        description="Planar spin squeezing: uncertainty bounds, BEC ground states, "
        "interferometric phase noise and entanglement witnesses.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    bounds = subparsers.add_parser("bounds", parents=[common], help="C_J table")
    bounds.add_argument("--j", required=True, help="spins: '0.5,1,2' or '0.5..7'")
    bounds.add_argument("--step", default="0.5", help="increment for 'a..b' spin ranges")

    state = subparsers.add_parser("state", parents=[common], help="optimal-state moments")
    state.add_argument("--j", required=True)

    bec = subparsers.add_parser("bec", parents=[common], help="double-well ground-state scan")
    bec.add_argument("--n", type=int, required=True, help="atom number N")
    bec.add_argument("--range", required=True, help="Ng/kappa range a:b[:steps]")

    phase = subparsers.add_parser("phase", parents=[common], help="phase uncertainty")
    phase.add_argument("--j", required=True)
    phase.add_argument("--step", default="0.5")
    phase.add_argument("--grid", type=int, default=64, help="number of phase offsets")
    phase.add_argument("--scaling", action="store_true", help="emit j,delta_phi_min instead")

    witness = subparsers.add_parser("witness", parents=[common], help="Werner-state witness table")
    witness.add_argument("--j", required=True)
    witness.add_argument("--step", default="0.5")
    witness.add_argument("--pn", required=True, help="noise grid a:b:step")
    witness.add_argument("--n", type=int, default=None, help="number of sites (default 2)")

    return parser


def _join_signed_values(argv):
    """Rewrite '--range -3:-1' as '--range=-3:-1' so argparse keeps the value."""
    joined = []
    index = 0
    while index < len(argv):
        token = argv[index]
        if token in _SIGNED_OPTIONS and index + 1 < len(argv):
            joined.append(f"{token}={argv[index + 1]}")
            index += 2
            continue
        joined.append(token)
        index += 1
    return joined


def configure_logging(verbosity):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def main(argv=None):
    """
    Run one command.

    Parameters
    ----------
    argv : list of str, optional
        Arguments without the program name, by default sys.argv[1:].

    Returns
    -------
    int
        Exit code.
    """
    parser = build_parser()
    argv = _join_signed_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    configure_logging(args.verbose)

    try:
        config = RunConfig.from_args(args)
        frame, payload = COMMAND_HANDLERS[config.command](config)
        ResultTables.write(frame, payload, config.output_path, config.format)
    except NumericalError as exc:
        logger.error("numerical failure: %s", exc)
        return EXIT_NUMERICAL
    except PlanarSqueezingError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except ValueError as exc:
        logger.error("invalid input: %s", exc)
        return EXIT_USAGE
    return EXIT_OK
