"""

Reading and writing result files.

JSON is used for records (states, bound results, scan points) so that they
re-parse losslessly; CSV is used for flat tables.

"""
import json
import logging
import sys

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = "%.12g"


def _to_builtin(value):
    """Turn numpy scalars and arrays into JSON-ready builtins."""
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _open_output(filename):
    if filename in (None, "-"):
        return sys.stdout, False
    return open(filename, "w", encoding="utf-8", newline=""), True


def save_to_file(data, filename):
    """
    Saves the given data to a JSON file.

    Parameters:
    data: dict, list or scalar; numpy values are converted to builtins.
    filename (str): Destination path, "-" for stdout.

    Returns:
    None
    """
    output, owned = _open_output(filename)
    try:
        json.dump(data, output, indent=2, default=_to_builtin, allow_nan=True)
        output.write("\n")
    finally:
        if owned:
            output.close()
    logger.debug("wrote JSON to %s", filename)


def load_from_file(filename):
    """
    Loads data written by `save_to_file`.

    Parameters:
    filename (str): The name of the file from which to load the data.

    Returns:
    The parsed JSON data.
    """
    with open(filename, "r", encoding="utf-8") as input_file:
        return json.load(input_file)


def save_table(dataframe, filename):
    """
    Writes a DataFrame as CSV with 12 significant digits and NaN as "nan".

    Parameters:
    dataframe (DataFrame): Table to write.
    filename (str): Destination path, "-" for stdout.
    """
    output, owned = _open_output(filename)
    try:
        dataframe.to_csv(output, index=False, float_format=CSV_FLOAT_FORMAT, na_rep="nan")
    finally:
        if owned:
            output.close()
    logger.debug("wrote %d rows to %s", len(dataframe), filename)


def load_table(filename):
    """Loads a CSV table written by `save_table`."""
    return pd.read_csv(filename)
