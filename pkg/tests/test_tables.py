"""Tests for the shared CSV table helpers."""

import numpy as np
import pandas as pd
import pytest

from ise_denoise.src.errors import ParseError
from ise_denoise.src.tables import numeric_block, read_table, render_table, write_table


class TestReadTable:
    """Test header and row extraction."""

    def test_rows_indexed_by_line(self, tmp_path):
        """Test that blank lines keep later rows on their physical line."""
        # Arrange
        path = tmp_path / "t.csv"
        path.write_text("a,b\n1,2\n\n3,4\n")

        # Act
        header, rows = read_table(path)

        # Assert
        assert header == ["a", "b"]
        assert list(rows.index) == [2, 4]
        assert rows.iat[1, 0] == "3"

    def test_cells_are_stripped_strings(self, tmp_path):
        """Test whitespace around header and cells."""
        path = tmp_path / "t.csv"
        path.write_text(" a , b\n 1 ,2 \n")
        header, rows = read_table(path)
        assert header == ["a", "b"]
        assert rows.iloc[0].tolist() == ["1", "2"]

    def test_empty_file(self, tmp_path):
        """Test that a file without a header is a parse error on line 1."""
        path = tmp_path / "t.csv"
        path.write_text("")
        with pytest.raises(ParseError, match="line 1"):
            read_table(path)

    def test_extra_field(self, tmp_path):
        """Test that a row wider than the header names its line."""
        path = tmp_path / "t.csv"
        path.write_text("a,b\n1,2\n3,4,5\n")
        with pytest.raises(ParseError, match="line 3") as excinfo:
            read_table(path)
        assert excinfo.value.line == 3

    def test_short_row_is_padded(self, tmp_path):
        """Test that a missing trailing cell reads as empty."""
        path = tmp_path / "t.csv"
        path.write_text("a,b\n1\n")
        _, rows = read_table(path)
        assert rows.iloc[0].tolist() == ["1", ""]


class TestNumericBlock:
    """Test numeric conversion of string rows."""

    def test_values(self, tmp_path):
        """Test that numbers parse to float64."""
        # Arrange
        path = tmp_path / "t.csv"
        path.write_text("a,b\n1,2.5\n-3e-2,4\n")
        _, rows = read_table(path)

        # Act
        values = numeric_block(rows, ["a", "b"])

        # Assert
        assert values.dtype == np.float64
        assert values.tolist() == [[1.0, 2.5], [-0.03, 4.0]]

    def test_bad_cell_after_blank_line(self, tmp_path):
        """Test that the error line counts blank lines."""
        path = tmp_path / "t.csv"
        path.write_text("a,b\n1,2\n\n3,x\n")
        _, rows = read_table(path)
        with pytest.raises(ParseError, match="non-numeric b value 'x'") as excinfo:
            numeric_block(rows, ["a", "b"])
        assert excinfo.value.line == 4

    def test_missing_cell(self, tmp_path):
        """Test that an empty cell is not a number."""
        path = tmp_path / "t.csv"
        path.write_text("a,b\n1\n")
        _, rows = read_table(path)
        with pytest.raises(ParseError, match="line 2"):
            numeric_block(rows, ["a", "b"])

    def test_no_rows(self, tmp_path):
        """Test a header-only file."""
        path = tmp_path / "t.csv"
        path.write_text("a,b\n")
        _, rows = read_table(path)
        assert numeric_block(rows, ["a", "b"]).shape == (0, 2)


class TestWriteTable:
    """Test CSV output."""

    def test_number_format(self):
        """Test 17 significant digits for floats and plain integers."""
        # Arrange
        frame = pd.DataFrame(
            {"x": [0.1, 1.0, 2.5], "n": pd.Series([1, 0, 7], dtype="int64")}
        )

        # Act
        lines = render_table(frame).splitlines()

        # Assert
        assert lines == ["x,n", "0.10000000000000001,1", "1,0", "2.5,7"]

    def test_doubles_survive_a_file(self, tmp_path):
        """Test that written floats parse back to the same double."""
        # Arrange
        rng = np.random.default_rng(11)
        values = rng.normal(size=(50, 3)) * 10.0 ** rng.integers(-12, 12, size=(50, 3))
        path = tmp_path / "t.csv"

        # Act
        write_table(pd.DataFrame(values, columns=["a", "b", "c"]), path)
        header, rows = read_table(path)

        # Assert
        assert header == ["a", "b", "c"]
        np.testing.assert_array_equal(numeric_block(rows, header), values)

    def test_header_only(self, tmp_path):
        """Test that an empty frame still writes its header."""
        path = tmp_path / "t.csv"
        write_table(pd.DataFrame(np.zeros((0, 2)), columns=["a", "b"]), path)
        assert path.read_text() == "a,b\n"
