import math
from fractions import Fraction

import numpy as np
import pytest

from gaugequench.series import QuenchTimeSeries, fmt

from oracles import synthetic_series

HALF = Fraction(1, 2)


class TestFormatting:
    def test_seventeen_significant_digits(self):
        assert fmt(1 / 3) == "0.33333333333333331"
        assert fmt(0.0) == "0"
        assert fmt(12.07) == "12.07"

    def test_infinities_are_literals(self):
        assert fmt(math.inf) == "inf"
        assert fmt(-math.inf) == "-inf"


def sample_series():
    t = np.arange(0.0, 0.5, 0.1)
    comps = {
        HALF: np.array([0.0, 0.1, 0.2, 0.3, 0.4]),
        -HALF: np.array([np.inf, 2.0, 1.0, 0.25, 0.2]),
    }
    return synthetic_series(
        t, comps, flux=np.linspace(0.5, -0.5, 5), condensate=np.linspace(0, 0.4, 5)
    )


class TestCsvRoundTrip:
    def test_header_schema(self):
        series = sample_series()
        assert series.header() == [
            "t", "lambda_min", "argmin_mz", "lambda_1/2", "lambda_-1/2",
            "flux", "condensate", "energy", "norm",
        ]

    def test_roundtrip_preserves_everything(self, tmp_path):
        series = sample_series()
        path = tmp_path / "run_timeseries.csv"
        series.to_csv(path)
        back = QuenchTimeSeries.from_csv(path)
        np.testing.assert_array_equal(back.times, series.times)
        np.testing.assert_array_equal(back.lambdas, series.lambdas)
        np.testing.assert_array_equal(back.lambda_min, series.lambda_min)
        np.testing.assert_array_equal(back.flux, series.flux)
        np.testing.assert_array_equal(back.norm, series.norm)
        assert back.mz_values == series.mz_values
        assert back.argmin_mz == series.argmin_mz

    def test_inf_serialized_as_literal(self, tmp_path):
        series = sample_series()
        path = tmp_path / "x.csv"
        series.to_csv(path)
        first_data_line = path.read_text().splitlines()[1]
        assert "inf" in first_data_line.split(",")

    def test_componentless_schema(self, tmp_path):
        series = sample_series()
        path = tmp_path / "bare.csv"
        series.to_csv(path, components=False)
        header = path.read_text().splitlines()[0].split(",")
        assert header == [
            "t", "lambda_min", "argmin_mz", "flux", "condensate", "energy", "norm",
        ]

    def test_no_partial_file_on_failure(self, tmp_path):
        series = sample_series()
        target = tmp_path / "missing_dir" / "x.csv"
        with pytest.raises(FileNotFoundError):
            series.to_csv(target)
        assert not target.exists()
        assert list(tmp_path.iterdir()) == []


class TestInvariants:
    def test_rejects_nonincreasing_times(self):
        series = sample_series()
        with pytest.raises(ValueError):
            QuenchTimeSeries(
                times=np.array([0.0, 0.0]),
                mz_values=series.mz_values,
                lambdas=series.lambdas[:2],
                lambda_min=series.lambda_min[:2],
                argmin_mz=series.argmin_mz[:2],
                flux=series.flux[:2],
                condensate=series.condensate[:2],
                energy=series.energy[:2],
                norm=series.norm[:2],
            )

    def test_spin_magnitude_is_extreme_label(self):
        assert sample_series().spin_magnitude == HALF

    def test_component_accessor(self):
        series = sample_series()
        np.testing.assert_array_equal(series.component(HALF), series.lambdas[:, 0])
