"""Tests for the presentation file format."""
import pytest

from nicholsbench.catalog.exceptional import available_tags, entry
from nicholsbench.catalog.fileformat import (
    dump_entry,
    load_entry,
    parse_entry,
    parse_pbw_spec,
    parse_series,
)
from nicholsbench.core.braiding import D21A_TRIANGLE
from nicholsbench.core.errors import PresentationFileError
from nicholsbench.core.quotient import hilbert_table

A2_FILE = """\
# generic A_2
[field]
M = 1
[braiding]
theta = 2
q(1,1) = t
q(2,2) = t
q(1, 2) = "1/t"
[relations]
ad(1; x(2))^2
ad(2; x(1))^2
"""


def error_line(text):
    with pytest.raises(PresentationFileError) as info:
        parse_entry(text)
    return info.value.line


class TestParseEntry:
    """Test parse_entry."""

    def test_a2(self):
        """Test a minimal file with defaults for the other sections."""
        e = parse_entry(A2_FILE)
        t = e.field.transcendental()
        assert e.tag == "custom"
        assert e.theta == 2
        assert e.braiding.entry(1, 2) == 1 / t
        assert e.braiding.entry(2, 1) == 1
        assert [r.to_text() for r in e.eminent().relations] == [
            "ad(1; x(2))^2",
            "ad(2; x(1))^2",
        ]
        assert hilbert_table(e.eminent(), 4)[(2, 2)] == 3

    def test_pbw_and_series(self):
        """Test optional PBW, series and central sections."""
        text = A2_FILE + (
            "[pbw]\nx(2) : inf\nx(1,2) : inf\nx(1) : inf\n"
            "[series]\nnumerator = 1\ndenominator = (1-t1)(1-t2)(1-t1*t2)\n"
            "[central]\nz = x(1,2)\n"
        )
        e = parse_entry(text)
        assert e.pbw.heights == [None, None, None]
        assert e.series.coefficients(4)[(2, 2)] == 3
        assert e.central.to_text() == "x(1,2)"
        assert e.nichols().relations[-1].to_text() == "x(1,2)"

    def test_nichols_section(self):
        """Test extra Nichols relations beyond z."""
        e = parse_entry(A2_FILE + "[nichols]\nx(1)^3\n")
        assert len(e.nichols().relations) == 3
        assert len(e.eminent().relations) == 2

    def test_load(self, tmp_path):
        """Test reading from disk."""
        path = tmp_path / "a2.txt"
        path.write_text(A2_FILE)
        assert load_entry(path).theta == 2

    def test_load_missing(self, tmp_path):
        """Test that an unreadable path raises."""
        with pytest.raises(PresentationFileError):
            load_entry(tmp_path / "missing.txt")


class TestErrors:
    """Test error reporting with line numbers."""

    def test_unknown_section(self):
        """Test an unknown header."""
        assert error_line("[meta]\ntag = a\n[bogus]\n") == 3

    def test_content_before_header(self):
        """Test text before the first header."""
        assert error_line("# comment\nx(1)^2\n") == 2

    def test_duplicate_section(self):
        """Test a repeated header."""
        assert error_line("[meta]\n[field]\n[meta]\n") == 3

    def test_bad_relation(self):
        """Test a relation syntax error reports its line."""
        assert error_line(A2_FILE + "x(1\n") == 12

    def test_missing_braiding(self):
        """Test that [braiding] is required."""
        assert error_line("[field]\nM = 1\n") is None

    def test_missing_diagonal(self):
        """Test that every diagonal entry is required."""
        assert error_line("[braiding]\ntheta = 2\nq(1,1) = t\n") == 1

    def test_entry_out_of_range(self):
        """Test an entry beyond theta."""
        assert error_line("[braiding]\ntheta = 1\nq(1,1) = t\nq(1,2) = t\n") == 4

    def test_bad_entry_value(self):
        """Test an unparsable scalar reports its line."""
        assert error_line("[braiding]\ntheta = 1\nq(1,1) = w\n") == 3

    def test_invalid_field(self):
        """Test pydantic validation of [field]."""
        assert error_line("[field]\nM = 0\n[braiding]\ntheta = 1\nq(1,1) = t\n") == 1

    def test_reserved_transcendental(self):
        """Test that x, ad and z cannot name the transcendental."""
        assert error_line("[field]\ntranscendental = z\n") == 1

    def test_parameter_clash(self):
        """Test a parameter named like the transcendental."""
        text = "[params]\nt = 2\n[braiding]\ntheta = 1\nq(1,1) = t\n"
        assert error_line(text) == 1

    def test_missing_equals(self):
        """Test a key without a value."""
        assert error_line("[meta]\ntag\n") == 2

    def test_duplicate_key(self):
        """Test a repeated key."""
        assert error_line("[meta]\ntag = a\ntag = b\n") == 3

    def test_bad_pbw_height(self):
        """Test an invalid PBW height."""
        assert error_line(A2_FILE + "[pbw]\nx(1) : many\n") == 13

    def test_message_prefix(self):
        """Test that messages carry the line number."""
        with pytest.raises(PresentationFileError, match="^line 3: "):
            parse_entry("[meta]\ntag = a\n[bogus]\n")


class TestDump:
    """Test dump_entry."""

    @pytest.mark.parametrize("tag", available_tags())
    def test_catalog_entries_reparse(self, tag):
        """Test that dumped catalog entries parse back to the same data."""
        original = entry(tag)
        parsed = parse_entry(dump_entry(original))
        assert parsed.tag == original.tag
        assert parsed.config.gkdim == original.config.gkdim == 3
        assert parsed.field == original.field
        assert parsed.braiding.entries == original.braiding.entries
        assert [r.to_text() for r in parsed.eminent_relations] == [
            r.to_text() for r in original.eminent_relations
        ]
        assert parsed.central.to_text() == original.central.to_text()
        assert parsed.pbw.heights == original.pbw.heights
        assert parsed.series.coefficients(4) == original.series.coefficients(4)

    def test_reparsed_quotient(self):
        """Test that a reparsed entry has the same low-degree Hilbert table."""
        original = entry(D21A_TRIANGLE)
        parsed = parse_entry(dump_entry(original))
        assert hilbert_table(parsed.eminent(), 3) == hilbert_table(original.eminent(), 3)

    def test_renamed_parameter_reparses(self):
        """Test a dump whose transcendental shares a parameter name."""
        original = entry(D21A_TRIANGLE, transcendental="r")
        parsed = parse_entry(dump_entry(original))
        assert parsed.field == original.field
        assert parsed.braiding.entries == original.braiding.entries
        assert hilbert_table(parsed.eminent(), 3) == hilbert_table(original.eminent(), 3)

    def test_unit_entries_omitted(self):
        """Test that off-diagonal ones are not written."""
        text = dump_entry(parse_entry(A2_FILE))
        assert "q(2,1)" not in text
        assert "q(1,2) = (1)/(t)" in text


class TestStandaloneSections:
    """Test parse_pbw_spec and parse_series."""

    def test_pbw_without_header(self):
        """Test bare PBW lines."""
        spec = parse_pbw_spec("x(1) : inf\nx(1,2) : 1\n")
        assert spec.heights == [None, 1]

    def test_pbw_error_line(self):
        """Test that bare-file line numbers are not shifted."""
        with pytest.raises(PresentationFileError) as info:
            parse_pbw_spec("x(1) : inf\nx(2) : two\n")
        assert info.value.line == 2

    def test_pbw_with_header(self):
        """Test a PBW file with its header."""
        with pytest.raises(PresentationFileError) as info:
            parse_pbw_spec("[pbw]\nx(1)\n")
        assert info.value.line == 2

    def test_series(self):
        """Test a bare series file."""
        series = parse_series("numerator = 1\ndenominator = 1 - t1\n", 1)
        assert series.coefficients(2) == {(0,): 1, (1,): 1, (2,): 1}

    def test_series_unknown_variable(self):
        """Test that series errors become file errors."""
        with pytest.raises(PresentationFileError):
            parse_series("numerator = 1 + t2\n", 1)

    def test_other_section_rejected(self):
        """Test that a series file cannot carry other sections."""
        with pytest.raises(PresentationFileError):
            parse_series("[pbw]\nx(1) : 1\n", 1)
