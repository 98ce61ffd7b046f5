"""Tests for the calibrate package."""

import numpy as np
import pytest

from ise_denoise.src.calibrate import (
    CalibConfig,
    CalibrationFit,
    QuadraticModel,
    apply_calibration,
    calibration_points,
    fit_exponential,
    fit_from_traces,
    fit_quadratic,
    merge_calibration,
    monomials,
    predict_quadratic,
    read_calibration,
    render_calibration,
    ten_point_calibration,
    write_calibration,
)
from ise_denoise.src.chem import CALCIUM, CANONICAL_ORDER, NITRATE, POTASSIUM
from ise_denoise.src.errors import DomainError, ParseError, RankError, StateError
from ise_denoise.src.neuralnet import Dataset
from ise_denoise.src.sim import ExperimentKind, run_experiment_protocol


def _points(a, b, voltages):
    return [(v, a * np.exp(b * v)) for v in voltages]


class TestFitExponential:
    """Test the log-linear exponential fit."""

    def test_exact_small_fit(self):
        """Test recovery of a = 2, b = 1 from three exact points."""
        # Arrange
        points = [(0.0, 2.0), (1.0, 2.0 * np.e), (2.0, 2.0 * np.e**2)]

        # Act
        fit = fit_exponential(points, POTASSIUM)

        # Assert
        assert fit.a == pytest.approx(2.0, rel=1e-12)
        assert fit.b == pytest.approx(1.0, rel=1e-12)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
        assert fit.n_points == 3

    def test_recovers_bench_like_constants(self):
        """Test recovery on a grid of ten voltages."""
        # Arrange
        points = _points(73.727, -5.748, np.linspace(-0.2, 0.4, 10))

        # Act
        fit = fit_exponential(points, CALCIUM)

        # Assert
        assert fit.a == pytest.approx(73.727, rel=1e-6)
        assert fit.b == pytest.approx(-5.748, abs=1e-9)
        assert fit.r_squared >= 0.999999

    def test_constant_concentration(self):
        """Test a flat calibration: b = 0 and a perfect score."""
        # Act
        fit = fit_exponential([(0.1, 5.0), (0.2, 5.0), (0.3, 5.0)], NITRATE)

        # Assert
        assert fit.a == pytest.approx(5.0, rel=1e-12)
        assert fit.b == pytest.approx(0.0, abs=1e-12)
        assert fit.r_squared == 1.0

    def test_concentration_scale_equivariance(self, rng):
        """Test that scaling C scales a and leaves b unchanged."""
        # Arrange
        voltages = rng.uniform(-0.1, 0.3, 12)
        conc = np.exp(3.0 * voltages) * rng.uniform(0.9, 1.1, 12)

        # Act
        base = fit_exponential(zip(voltages, conc), POTASSIUM)
        scaled = fit_exponential(zip(voltages, 7.0 * conc), POTASSIUM)

        # Assert
        assert scaled.a == pytest.approx(7.0 * base.a, rel=1e-9)
        assert scaled.b == pytest.approx(base.b, rel=1e-9)

    def test_voltage_shift_equivariance(self, rng):
        """Test that shifting V by d multiplies a by exp(-b d)."""
        # Arrange
        voltages = rng.uniform(-0.1, 0.3, 12)
        conc = 2.0 * np.exp(-4.0 * voltages) * rng.uniform(0.95, 1.05, 12)

        # Act
        base = fit_exponential(zip(voltages, conc), POTASSIUM)
        shifted = fit_exponential(zip(voltages + 0.05, conc), POTASSIUM)

        # Assert
        assert shifted.b == pytest.approx(base.b, rel=1e-9)
        assert shifted.a == pytest.approx(base.a * np.exp(-base.b * 0.05), rel=1e-9)

    def test_identical_voltages_rank_error(self):
        """Test that a zero voltage spread is rank deficient."""
        with pytest.raises(RankError):
            fit_exponential([(0.1, 1.0), (0.1, 2.0)], POTASSIUM)

    @pytest.mark.parametrize(
        "points",
        [
            [(0.1, 1.0)],
            [(0.1, 1.0), (0.2, 0.0)],
            [(0.1, 1.0), (0.2, -3.0)],
            [(0.1, 1.0), (float("nan"), 2.0)],
        ],
    )
    def test_invalid_points(self, points):
        """Test the point preconditions."""
        with pytest.raises(DomainError):
            fit_exponential(points, POTASSIUM)


class TestCalibrationFit:
    """Test the fit record."""

    def test_rejects_nonpositive_a(self):
        """Test the a > 0 invariant."""
        with pytest.raises(DomainError):
            CalibrationFit(POTASSIUM, 0.0, 1.0, 0.9, 5)

    def test_electrode_carries_calibration(self):
        """Test conversion to a calibrated electrode."""
        # Act
        electrode = CalibrationFit(POTASSIUM, 3.0, 2.0, 0.9, 5).electrode()

        # Assert
        assert electrode.calib_a == 3.0
        assert electrode.calib_b == 2.0


class TestTenPoint:
    """Test the per-electrode calibration baseline."""

    def test_zero_voltage_reads_a(self):
        """Test C = a at V = 0."""
        # Arrange
        fits = {"K": CalibrationFit(POTASSIUM, 73.727, -5.748, 0.99, 10)}

        # Act
        out = ten_point_calibration(fits, [0.0], channels=("K",))

        # Assert
        assert out.tolist() == [73.727]

    def test_missing_fit_is_state_error(self):
        """Test that every channel needs a fit."""
        fits = {"K": CalibrationFit(POTASSIUM, 1.0, 1.0, 0.99, 10)}
        with pytest.raises(StateError, match="Ca"):
            ten_point_calibration(fits, [0.0, 0.0, 0.0, 0.0])

    def test_matrix_matches_rows(self, rng):
        """Test that the vectorized form agrees with the row form."""
        # Arrange
        fits = {
            name: CalibrationFit(POTASSIUM, 1.0 + i, -2.0 + i, 0.99, 10)
            for i, name in enumerate(CANONICAL_ORDER)
        }
        voltages = rng.uniform(-0.2, 0.2, size=(5, 4))

        # Act
        matrix = apply_calibration(fits, voltages)

        # Assert
        for row, expected in zip(voltages, matrix):
            np.testing.assert_allclose(ten_point_calibration(fits, row), expected, rtol=1e-14)


class TestFromTraces:
    """Test fitting from simulated single-solvent traces."""

    def test_points_respect_floor(self, short_protocol):
        """Test that distilled-water rows are excluded."""
        # Arrange
        traces = run_experiment_protocol(
            ExperimentKind.SINGLE_SOLVENT, short_protocol, repeats=1, ion="K"
        )

        # Act
        points = calibration_points(traces, "K", floor=1e-6)

        # Assert
        assert points.shape[0] == len(traces[0]) - 10
        assert np.all(points[:, 1] > 0)

    def test_stable_only_drops_rows(self, short_protocol):
        """Test the settled-sample filter."""
        traces = run_experiment_protocol(
            ExperimentKind.SINGLE_SOLVENT, short_protocol, repeats=1, ion="K"
        )
        every = calibration_points(traces, "K", floor=1e-6)
        stable = calibration_points(traces, "K", floor=1e-6, stable_only=True)
        assert stable.shape[0] < every.shape[0]

    def test_clean_single_solvent_is_exact(self, clean_protocol):
        """Test a perfect fit without artifacts."""
        # Arrange
        traces = run_experiment_protocol(
            ExperimentKind.SINGLE_SOLVENT, clean_protocol, ion="NO3"
        )

        # Act
        fit = fit_from_traces(traces, "NO3", floor=1e-6)

        # Assert
        assert fit.r_squared == pytest.approx(1.0, abs=1e-9)
        assert fit.b < 0

    def test_unknown_channel(self, mixture_traces):
        """Test that the ion must be a trace channel."""
        with pytest.raises(DomainError):
            calibration_points(mixture_traces, "Na", floor=1e-6)


class TestQuadratic:
    """Test the degree-2 regression baseline."""

    def test_monomial_order(self):
        """Test the column layout for two inputs."""
        assert monomials([[2.0, 3.0]]).tolist() == [[1.0, 2.0, 3.0, 4.0, 6.0, 9.0]]

    def test_zero_coefficients(self):
        """Test that a zero model predicts zero."""
        model = QuadraticModel(np.zeros((4, 15)))
        assert predict_quadratic(model, [0.1, 0.2, 0.3, 0.4]).tolist() == [0.0] * 4

    def test_channel_identity(self):
        """Test C_o = V_o."""
        # Arrange
        coefficients = np.zeros((4, 15))
        for o in range(4):
            coefficients[o, 1 + o] = 1.0
        model = QuadraticModel(coefficients)

        # Act & Assert
        np.testing.assert_array_equal(
            predict_quadratic(model, [0.1, 0.2, 0.3, 0.4]), [0.1, 0.2, 0.3, 0.4]
        )

    def test_cross_term(self):
        """Test C_0 = 2 V_0 V_1."""
        # Arrange
        coefficients = np.zeros((4, 15))
        coefficients[0, 6] = 2.0
        model = QuadraticModel(coefficients)

        # Act
        out = predict_quadratic(model, [3.0, 4.0, 0.0, 0.0])

        # Assert
        assert out[0] == 24.0

    def test_intercept_only(self):
        """Test that an intercept-only model is constant."""
        coefficients = np.zeros((4, 15))
        coefficients[:, 0] = 2.5
        out = predict_quadratic(QuadraticModel(coefficients), np.random.default_rng(0).uniform(size=(3, 4)))
        assert np.all(out == 2.5)

    def test_fit_channel_identity(self, rng):
        """Test a fit on C_o = V_o."""
        # Arrange
        V = rng.uniform(0.1, 1.0, size=(50, 4))

        # Act
        model = fit_quadratic(Dataset(V, V.copy()), ridge=0.0)

        # Assert
        expected = np.zeros((4, 15))
        for o in range(4):
            expected[o, 1 + o] = 1.0
        np.testing.assert_allclose(model.coefficients, expected, atol=1e-8)

    def test_incomplete_basis_rejected(self):
        """Test the coefficient count check."""
        with pytest.raises(DomainError):
            QuadraticModel(np.zeros((4, 14)))

    def test_fit_recovers_polynomial(self, rng):
        """Test an exact fit on noise-free quadratic targets."""
        # Arrange
        V = rng.uniform(0.0, 1.0, size=(60, 4))
        targets = np.column_stack(
            [
                5.0 + V[:, 0] + 2.0 * V[:, 0] * V[:, 1],
                3.0 + V[:, 3] ** 2,
                1.0 + 0.5 * V[:, 2],
                2.0 + V[:, 1] * V[:, 3],
            ]
        )

        # Act
        model = fit_quadratic(Dataset(V, targets), ridge=0.0)

        # Assert
        assert model.n_inputs == 4
        np.testing.assert_allclose(predict_quadratic(model, V), targets, rtol=1e-8)

    def test_beats_constant_predictor_on_training_rows(self, rng):
        """Test that the fitted residual never exceeds the best constant's."""
        for _ in range(20):
            # Arrange
            n = int(rng.integers(20, 80))
            V = rng.uniform(-0.3, 0.3, size=(n, 4))
            targets = rng.uniform(0.1, 10.0, size=(n, 4))

            # Act
            model = fit_quadratic(Dataset(V, targets), ridge=0.0)
            residual = np.sum((predict_quadratic(model, V) - targets) ** 2, axis=0)
            constant = np.sum((targets - targets.mean(axis=0)) ** 2, axis=0)

            # Assert
            assert np.all(residual <= constant * (1.0 + 1e-9))

    def test_windowed_dataset_uses_current_voltages(self, rng):
        """Test that lag columns are ignored."""
        # Arrange
        V = rng.uniform(0.0, 1.0, size=(40, 8))
        targets = 1.0 + V[:, :4]

        # Act
        model = fit_quadratic(Dataset(V, targets, window=2))

        # Assert
        assert model.n_inputs == 4
        np.testing.assert_allclose(predict_quadratic(model, V), targets, rtol=1e-6)

    def test_collinear_without_ridge(self):
        """Test the rank check when a channel is constant zero."""
        # Arrange
        V = np.zeros((30, 4))
        V[:, 0] = np.linspace(0.0, 1.0, 30)
        targets = np.ones((30, 4))

        # Act & Assert
        with pytest.raises(RankError):
            fit_quadratic(Dataset(V, targets), ridge=0.0)
        fit_quadratic(Dataset(V, targets), ridge=1e-8)

    def test_too_few_rows(self, rng):
        """Test that the fit needs one row per monomial."""
        V = rng.uniform(size=(10, 4))
        with pytest.raises(DomainError):
            fit_quadratic(Dataset(V, np.ones((10, 4))))


class TestCalibrationFiles:
    """Test calibration CSV I/O."""

    @pytest.fixture
    def fits(self):
        """Provide two fits."""
        return {
            "NO3": CalibrationFit(NITRATE, 12.5, -38.9, 0.998, 480),
            "K": CalibrationFit(POTASSIUM, 0.0123, 38.7, 0.9991, 480),
        }

    def test_write_then_read(self, tmp_path, fits):
        """Test that values survive a file exactly."""
        # Arrange
        path = tmp_path / "calibration.csv"

        # Act
        write_calibration(path, fits)
        loaded = read_calibration(path)

        # Assert
        assert list(loaded) == ["K", "NO3"]
        assert loaded["K"] == fits["K"]
        assert loaded["NO3"] == fits["NO3"]

    def test_canonical_row_order(self, fits):
        """Test rows follow K, Ca, NO3, NH4."""
        lines = render_calibration(fits).splitlines()
        assert lines[0] == "ion,a,b,r_squared,n_points"
        assert [line.split(",")[0] for line in lines[1:]] == ["K", "NO3"]

    def test_bad_header(self, tmp_path):
        """Test header validation."""
        path = tmp_path / "bad.csv"
        path.write_text("ion,a,b\nK,1,2\n")
        with pytest.raises(ParseError, match="line 1"):
            read_calibration(path)

    def test_bad_value_reports_line(self, tmp_path):
        """Test that parse errors carry the line number."""
        path = tmp_path / "bad.csv"
        path.write_text("ion,a,b,r_squared,n_points\nK,1,2,0.9,5\nCa,x,2,0.9,5\n")
        with pytest.raises(ParseError, match="line 3") as excinfo:
            read_calibration(path)
        assert excinfo.value.line == 3

    def test_unknown_ion(self, tmp_path):
        """Test that ions must be registered."""
        path = tmp_path / "bad.csv"
        path.write_text("ion,a,b,r_squared,n_points\nNa,1,2,0.9,5\n")
        with pytest.raises(ParseError, match="Na"):
            read_calibration(path)

    def test_duplicate_ion(self, tmp_path):
        """Test that each ion appears once."""
        path = tmp_path / "bad.csv"
        path.write_text("ion,a,b,r_squared,n_points\nK,1,2,0.9,5\nK,1,2,0.9,5\n")
        with pytest.raises(ParseError, match="duplicate"):
            read_calibration(path)

    def test_empty_file(self, tmp_path):
        """Test a header-only file."""
        path = tmp_path / "empty.csv"
        path.write_text("ion,a,b,r_squared,n_points\n")
        with pytest.raises(ParseError):
            read_calibration(path)

    def test_fractional_point_count(self, tmp_path):
        """Test that n_points must be a whole number."""
        path = tmp_path / "bad.csv"
        path.write_text("ion,a,b,r_squared,n_points\n\nK,1,2,0.9,5.5\n")
        with pytest.raises(ParseError, match="n_points") as excinfo:
            read_calibration(path)
        assert excinfo.value.line == 3

    def test_merge_replaces_updated_ions(self, fits):
        """Test merge semantics."""
        # Arrange
        update = {"K": CalibrationFit(POTASSIUM, 1.0, 1.0, 0.5, 2)}

        # Act
        merged = merge_calibration(fits, update)

        # Assert
        assert merged["K"].a == 1.0
        assert merged["NO3"] == fits["NO3"]

    def test_merge_needs_updates(self, fits):
        """Test that an empty update is rejected."""
        with pytest.raises(DomainError):
            merge_calibration(fits, {})


class TestCalibConfig:
    """Test the calib.* section."""

    def test_defaults(self):
        """Test default values."""
        config = CalibConfig()
        assert config.floor == 1e-6
        assert config.stable_only is False

    def test_unknown_key(self):
        """Test that unknown keys are rejected."""
        with pytest.raises(ValueError):
            CalibConfig(window=3)
