"""Tests for closed-form Hilbert series and table helpers."""
import pytest

from nicholsbench.catalog.exceptional import ALL_MINUS_ONE_SERIES, CHAIN_SERIES, entry
from nicholsbench.core.braiding import SUPER_A_J2
from nicholsbench.core.errors import InvalidOperandError
from nicholsbench.core.series import (
    RationalSeries,
    compare_tables,
    gkdim_pole_order,
    table_product,
    table_tensor,
)


def chain():
    return RationalSeries.from_text(3, *CHAIN_SERIES)


class TestCoefficients:
    """Test power-series expansion."""

    def test_chain_low_degrees(self):
        """Test a few coefficients of the chain series."""
        table = chain().coefficients(3)
        assert table[(0, 0, 0)] == 1
        assert table[(1, 0, 0)] == 1
        assert table[(1, 1, 0)] == 2
        assert table[(0, 2, 0)] == 0

    def test_geometric(self):
        """Test 1/(1 - t1) has every coefficient 1."""
        table = RationalSeries.geometric(1, (1,)).coefficients(4)
        assert list(table.values()) == [1, 1, 1, 1, 1]

    def test_bounded_generator(self):
        """Test a generator of height 1 contributes 1 + t."""
        table = RationalSeries.from_pbw(1, [(1,)], [1]).coefficients(3)
        assert table == {(0,): 1, (1,): 1, (2,): 0, (3,): 0}

    def test_pbw_matches_closed_form(self):
        """Test that the SuperA3-J2 PBW data reproduces its closed form."""
        e = entry(SUPER_A_J2)
        degrees = e.pbw.degrees(e.eminent())
        from_pbw = RationalSeries.from_pbw(3, degrees, e.pbw.heights)
        assert from_pbw.coefficients(6) == chain().coefficients(6)

    def test_zero_constant_term(self):
        """Test that a denominator without constant term raises."""
        with pytest.raises(InvalidOperandError):
            RationalSeries.from_text(1, "1", "t1").coefficients(2)

    def test_non_integer_coefficient(self):
        """Test that fractional coefficients raise."""
        with pytest.raises(InvalidOperandError):
            RationalSeries.from_text(1, "1", "2").coefficients(1)


class TestParsing:
    """Test series text handling."""

    def test_unknown_variable(self):
        """Test that names other than t1..t_theta are rejected."""
        with pytest.raises(InvalidOperandError):
            RationalSeries.from_text(2, "1 + u")

    def test_variable_beyond_theta(self):
        """Test that t3 is unknown for theta = 2."""
        with pytest.raises(InvalidOperandError):
            RationalSeries.from_text(2, "1 + t3")

    def test_zero_denominator(self):
        """Test that a zero denominator is rejected."""
        with pytest.raises(InvalidOperandError):
            RationalSeries.from_text(1, "1", "0")

    def test_caret_power(self):
        """Test that ^ means power."""
        series = RationalSeries.from_text(1, "1", "1 - t1^2")
        assert series.coefficients(3) == {(0,): 1, (1,): 0, (2,): 1, (3,): 0}

    def test_to_dict(self):
        """Test serialization."""
        data = RationalSeries.geometric(2, (1, 1)).to_dict()
        assert data["theta"] == 2
        assert data["numerator"] == "1"
        assert "t1*t2" in data["denominator"]


class TestPoleOrder:
    """Test gkdim_pole_order."""

    @pytest.mark.parametrize("texts", [CHAIN_SERIES, ALL_MINUS_ONE_SERIES])
    def test_catalog_series(self, texts):
        """Test that both catalog series have a pole of order 3."""
        assert gkdim_pole_order(RationalSeries.from_text(3, *texts)) == 3

    def test_geometric(self):
        """Test 1/(1 - t1) has pole order 1."""
        assert gkdim_pole_order(RationalSeries.geometric(1, (1,))) == 1

    def test_polynomial(self):
        """Test a polynomial has pole order 0."""
        assert gkdim_pole_order(RationalSeries.from_text(2, "(1+t1)(1+t2)")) == 0

    def test_cancellation(self):
        """Test that numerator zeros at 1 cancel denominator zeros."""
        series = RationalSeries.from_text(1, "1 - t1", "(1 - t1)^2")
        assert gkdim_pole_order(series) == 1

    def test_zero_numerator(self):
        """Test that a zero numerator raises."""
        with pytest.raises(InvalidOperandError):
            gkdim_pole_order(RationalSeries.from_text(1, "0"))


class TestTables:
    """Test products and comparisons of tables."""

    def test_tensor_series(self):
        """Test tensoring two rank-1 series."""
        one = RationalSeries.geometric(1, (1,))
        two = one.tensor(RationalSeries.from_pbw(1, [(1,)], [1]))
        table = two.coefficients(3)
        assert table[(2, 1)] == 1
        assert table[(1, 2)] == 0
        assert table == table_tensor(one.coefficients(3), {(0,): 1, (1,): 1, (2,): 0, (3,): 0}, 3)

    def test_product(self):
        """Test that 1/(1-t)^2 has coefficients k + 1."""
        geometric = RationalSeries.geometric(1, (1,)).coefficients(4)
        assert table_product(geometric, geometric, 4) == {(k,): k + 1 for k in range(5)}

    def test_series_product_matches_tables(self):
        """Test that multiplying series convolves their tables."""
        a = RationalSeries.geometric(2, (1, 0))
        b = RationalSeries.from_text(2, "1 + t1*t2")
        assert (a * b).coefficients(4) == table_product(a.coefficients(4), b.coefficients(4), 4)

    def test_mismatched_product(self):
        """Test that series over different variables do not multiply."""
        with pytest.raises(InvalidOperandError):
            RationalSeries.geometric(1, (1,)) * RationalSeries.geometric(2, (1, 0))

    def test_compare(self):
        """Test compare_tables lists disagreements by total degree."""
        expected = {(0, 0): 1, (1, 0): 1, (0, 1): 1}
        actual = {(0, 0): 1, (1, 0): 0, (0, 1): 2}
        assert compare_tables(expected, actual) == [((0, 1), 1, 2), ((1, 0), 1, 0)]
        assert compare_tables(expected, dict(expected)) == []
