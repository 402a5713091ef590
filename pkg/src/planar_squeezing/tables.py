"""

Module for assembling computed results into tables and records.

Classes:
- ResultTables: DataFrames and JSON records for every CLI command.

"""
import logging

import numpy as np
import pandas as pd

from .bec_model import SCAN_COLUMNS
from .file_utils import save_table, save_to_file

logger = logging.getLogger(__name__)

BOUNDS_COLUMNS = ["j", "c_exact", "c_direct", "c_asymptotic", "rel_err_asymptotic"]
STATE_COLUMNS = [
    "j",
    "mean_x",
    "mean_y",
    "mean_z",
    "var_x",
    "var_y",
    "var_z",
    "planar_sum",
    "total_spin",
    "heisenberg_ratio",
    "lambda_star",
]
SCALING_COLUMNS = ["j", "delta_phi_min"]


def _or_nan(value):
    return float("nan") if value is None else float(value)


class ResultTables:
    """Class to turn result objects into tables and write them out"""

    @staticmethod
    def bounds_frame(results):
        """
        Table of C_J values, one row per spin.

        Parameters:
        results (list of BoundResult): Solver output in row order.

        Returns:
        DataFrame: Columns j, c_exact, c_direct, c_asymptotic, rel_err_asymptotic.
        """
        rows = [
            {
                "j": r.j.value,
                "c_exact": r.c_exact,
                "c_direct": _or_nan(r.c_direct),
                "c_asymptotic": _or_nan(r.c_asymptotic),
                "rel_err_asymptotic": _or_nan(r.rel_err_asymptotic),
            }
            for r in results
        ]
        return pd.DataFrame(rows, columns=BOUNDS_COLUMNS)

    @staticmethod
    def state_frame(result):
        """
        One-row table with the mean vector and variance triple of the optimal state.

        Parameters:
        result (BoundResult): Solver output for one spin.

        Returns:
        DataFrame: Columns of STATE_COLUMNS.
        """
        moments = result.optimal_moments
        row = {
            "j": result.j.value,
            "mean_x": float(moments.mean[0]),
            "mean_y": float(moments.mean[1]),
            "mean_z": float(moments.mean[2]),
            "var_x": moments.var_x,
            "var_y": moments.var_y,
            "var_z": moments.var_z,
            "planar_sum": moments.planar_sum,
            "total_spin": moments.total_spin,
            "heisenberg_ratio": result.heisenberg_ratio if moments.mean[0] > 0 else float("nan"),
            "lambda_star": result.lambda_star,
        }
        return pd.DataFrame([row], columns=STATE_COLUMNS)

    @staticmethod
    def bec_frame(points):
        """Scan rows; degenerate points keep their ratio with NaN values."""
        return pd.DataFrame([p.to_dict() for p in points], columns=SCAN_COLUMNS)

    @staticmethod
    def scaling_frame(j_values, errors):
        """Optimal Delta phi at alpha = pi/2 per spin."""
        return pd.DataFrame(
            {"j": [float(j) for j in j_values], "delta_phi_min": np.asarray(errors, dtype=float)},
            columns=SCALING_COLUMNS,
        )

    @staticmethod
    def records(frame):
        """DataFrame rows as JSON-ready dicts, NaN kept as float NaN."""
        return [
            {key: (value.item() if isinstance(value, np.generic) else value) for key, value in row.items()}
            for row in frame.to_dict(orient="records")
        ]

    @staticmethod
    def write(frame, payload, output_path, output_format):
        """
        Write a result in the requested format.

        Parameters:
        frame (DataFrame): Table written for "csv".
        payload: JSON-ready records written for "json".
        output_path (str): Destination path, "-" for stdout.
        output_format (str): "csv" or "json".
        """
        if output_format == "json":
            save_to_file(payload, output_path)
        else:
            save_table(frame, output_path)
        logger.info("wrote %s output to %s", output_format, output_path)
