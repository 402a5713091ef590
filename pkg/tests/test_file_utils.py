import math

import numpy as np
import pandas as pd
import pytest

from planar_squeezing.file_utils import load_from_file, load_table, save_table, save_to_file
from planar_squeezing.spin_core import SpinQuantumNumber, SpinState
from planar_squeezing.tables import ResultTables


class TestJsonFiles:
    """save_to_file / load_from_file."""

    def test_round_trip_with_numpy_values(self, tmp_path):
        path = tmp_path / "record.json"
        save_to_file({"two_j": np.int64(3), "values": np.array([0.1, 0.2]), "x": np.float64(1.5)}, path)
        assert load_from_file(path) == {"two_j": 3, "values": [0.1, 0.2], "x": 1.5}

    def test_state_round_trip_is_lossless(self, tmp_path, rng):
        state = SpinState.random(SpinQuantumNumber(9), rng)
        path = tmp_path / "state.json"
        save_to_file(state.to_dict(), path)
        assert load_from_file(path) == state.to_dict()

    def test_nan_survives(self, tmp_path):
        path = tmp_path / "nan.json"
        save_to_file({"value": float("nan")}, path)
        assert math.isnan(load_from_file(path)["value"])

    def test_rejects_unknown_objects(self, tmp_path):
        with pytest.raises(TypeError):
            save_to_file({"state": object()}, tmp_path / "bad.json")


class TestCsvTables:
    """save_table / load_table."""

    def test_float_format_and_nan(self, tmp_path):
        path = tmp_path / "table.csv"
        save_table(pd.DataFrame({"a": [1 / 3, float("nan")], "b": [7 / 16, 2.0]}), path)
        lines = path.read_text().splitlines()
        assert lines == ["a,b", "0.333333333333,0.4375", "nan,2"]
        frame = load_table(path)
        assert frame["b"].tolist() == [0.4375, 2.0]
        assert np.isnan(frame["a"][1])

    def test_records_are_builtin(self):
        frame = pd.DataFrame({"alpha": [0.5], "delta_phi": [np.float64(0.1)]})
        record = ResultTables.records(frame)[0]
        assert type(record["delta_phi"]) is float
