"""Tests for Weyl-groupoid reflections and root enumeration."""
import pytest

from nicholsbench.catalog.exceptional import entry
from nicholsbench.core.braiding import (
    D21A_FIRST,
    D21A_SECOND,
    D21A_TRIANGLE,
    SUPER_A_J2,
    SUPER_A_J123,
    BraidingMatrix,
    extend_by_root,
)
from nicholsbench.core.coeff import ground_field
from nicholsbench.core.errors import InvalidOperandError, UndefinedCartanEntryError
from nicholsbench.core.weyl import (
    DIVERGED,
    FINITE,
    UNDEFINED_M,
    positive_roots,
    reflect,
    reflection_images,
)

F = ground_field(1)


def diagram(labels, edges):
    return BraidingMatrix.from_diagram(
        F,
        [F.parse(label) for label in labels],
        {pair: F.parse(label) for pair, label in edges.items()},
    )


def a2():
    return diagram(["t", "t"], {(1, 2): "1/t"})


class TestReflect:
    """Test reflections of braiding matrices."""

    def test_images(self):
        """Test s_1 on the simple roots of A_2."""
        assert reflection_images(a2(), 1) == ((-1, 0), (1, 1))

    def test_a2_self_reflective(self):
        """Test that reflecting A_2 keeps its Dynkin diagram."""
        q = a2()
        assert reflect(q, 1).diagram().key() == q.diagram().key()

    def test_double_reflection(self):
        """Test that reflecting twice at one vertex restores the diagram."""
        q = entry(SUPER_A_J2).braiding
        for i in (1, 2, 3):
            assert reflect(reflect(q, i), i).diagram().key() == q.diagram().key()

    def test_rank_one(self):
        """Test the rank-1 reflection."""
        q = diagram(["t"], {})
        assert reflect(q, 1).vertex_label(1) == F.transcendental()

    def test_blocked(self):
        """Test that an undefined m_ij blocks the reflection."""
        q = diagram(["t", "t"], {(1, 2): "t"})
        with pytest.raises(UndefinedCartanEntryError) as info:
            reflect(q, 1)
        assert info.value.witness == (1, 2)


class TestPositiveRoots:
    """Test positive_roots."""

    def test_a2(self):
        """Test that generic A_2 has three positive roots."""
        result = positive_roots(a2())
        assert result.status == FINITE
        assert result.roots == [(0, 1), (1, 0), (1, 1)]

    def test_rank_one(self):
        """Test a single vertex."""
        result = positive_roots(diagram(["t"], {}))
        assert result.is_finite
        assert result.roots == [(1,)]

    def test_disconnected(self):
        """Test two vertices with a trivial edge."""
        result = positive_roots(diagram(["t", "-1"], {}))
        assert result.roots == [(0, 1), (1, 0)]

    def test_undefined(self):
        """Test that an undefined m_ij is reported with its witness."""
        result = positive_roots(diagram(["t", "t"], {(1, 2): "t"}))
        assert result.status == UNDEFINED_M
        assert result.witness == (1, 2)
        assert result.roots == []

    def test_a2_extended_by_x112(self):
        """Test that A_2 plus a vertex of degree 2a_1 + a_2 does not close."""
        w = extend_by_root(a2(), (2, 1))
        result = positive_roots(w)
        assert result.status in (UNDEFINED_M, DIVERGED)
        assert not result.is_finite

    def test_cap_too_small(self):
        """Test that the cap must be at least theta."""
        with pytest.raises(InvalidOperandError):
            positive_roots(a2(), cap=1)

    def test_roots_closed_under_reflections(self):
        """Test the finite root set contains every simple root."""
        result = positive_roots(a2())
        for root in [(1, 0), (0, 1)]:
            assert root in result.roots

    def test_to_dict(self):
        """Test serialization."""
        data = positive_roots(a2()).to_dict()
        assert data["status"] == "finite"
        assert data["count"] == 3
        assert data["roots"] == [[0, 1], [1, 0], [1, 1]]
        assert data["witness"] is None

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "tag,count",
        [
            (SUPER_A_J2, 6),
            (SUPER_A_J123, 6),
            (D21A_FIRST, 7),
            (D21A_SECOND, 7),
            (D21A_TRIANGLE, 7),
        ],
    )
    def test_catalog_root_counts(self, tag, count):
        """Test that the exceptional braidings have finite root systems."""
        result = positive_roots(entry(tag).braiding)
        assert result.status == FINITE
        assert len(result.roots) == count
