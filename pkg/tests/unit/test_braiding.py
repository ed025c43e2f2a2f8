"""Tests for braiding matrices, Dynkin diagrams and the necessary conditions."""
import random

import pytest

from nicholsbench.catalog.exceptional import entry
from nicholsbench.core.braiding import (
    D21A_FIRST,
    D21A_SECOND,
    D21A_TRIANGLE,
    OTHER,
    SUPER_A_J2,
    SUPER_A_J123,
    BraidingMatrix,
    add_degrees,
    bicharacter,
    cartan_matrix,
    check_classification_remark,
    check_necessary_conditions,
    chordless_cycles,
    connected_components,
    degrees_up_to,
    extend_by_root,
    m_ij,
    recognize_exceptional_type,
    recognize_with_relabeling,
    simple_root,
    triangles,
)
from nicholsbench.core.coeff import ground_field
from nicholsbench.core.errors import DegreeMismatchError, InvalidOperandError

F = ground_field(1)
T = F.transcendental()


def diagram(labels, edges, field=F):
    """Braiding with the given Dynkin diagram; labels and edges are literal text."""
    return BraidingMatrix.from_diagram(
        field,
        [field.parse(label) for label in labels],
        {pair: field.parse(label) for pair, label in edges.items()},
    )


def kinds(q):
    return sorted({v.kind for v in check_necessary_conditions(q)})


def a2():
    return diagram(["t", "t"], {(1, 2): "1/t"})


class TestDegrees:
    """Test multidegree helpers."""

    def test_simple_root(self):
        """Test alpha_i and its range check."""
        assert simple_root(2, 3) == (0, 1, 0)
        with pytest.raises(InvalidOperandError):
            simple_root(4, 3)

    def test_add_length_mismatch(self):
        """Test that adding degrees of different lengths fails."""
        with pytest.raises(DegreeMismatchError):
            add_degrees((1, 0), (1, 0, 0))

    def test_degrees_up_to(self):
        """Test enumeration order and count of multidegrees."""
        degrees = degrees_up_to(2, 2)
        assert degrees == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]


class TestBraidingMatrix:
    """Test BraidingMatrix."""

    def test_from_diagram_representative(self):
        """Test that the edge label sits above the diagonal and 1 below it."""
        q = a2()
        assert q.entry(1, 2) == 1 / T
        assert q.entry(2, 1) == 1
        assert q.edge_label(1, 2) == q.edge_label(2, 1) == 1 / T

    def test_rejects_zero_entries(self):
        """Test that zero entries are rejected."""
        with pytest.raises(InvalidOperandError):
            BraidingMatrix.from_rows(F, [[1, 0], [1, 1]])

    def test_rejects_non_square(self):
        """Test that ragged rows are rejected."""
        with pytest.raises(DegreeMismatchError):
            BraidingMatrix.from_rows(F, [[1, 1], [1]])

    def test_diagram(self):
        """Test vertex and edge labels of the Dynkin diagram."""
        d = a2().diagram()
        assert d.theta == 2
        assert d.vertex_labels == (T, T)
        assert d.edges == ((1, 2, 1 / T),)
        assert d.neighbors(1) == [2]
        assert "1-2: " in d.render()

    def test_permute(self):
        """Test relabeling vertices."""
        q = diagram(["t", "-1", "1/t"], {(1, 2): "1/t", (2, 3): "t"})
        p = q.permute((3, 2, 1))
        assert p.vertex_label(1) == 1 / T
        assert p.edge_label(1, 2) == T
        with pytest.raises(InvalidOperandError):
            q.permute((1, 1, 2))

    def test_to_dict(self):
        """Test serialization."""
        data = a2().to_dict()
        assert data["theta"] == 2
        assert data["entries"][0][0] == "t"


class TestBicharacter:
    """Test the bicharacter chi."""

    def test_basis_case(self):
        """Test chi(alpha_1, alpha_2) = q_12."""
        q = a2()
        assert bicharacter(q, (1, 0), (0, 1)) == q.entry(1, 2)

    def test_zero_degree(self):
        """Test chi(0, b) = 1."""
        assert bicharacter(a2(), (0, 0), (3, 1)) == 1

    def test_a2_square(self):
        """Test chi((2,1),(2,1)) = q^3 for generic A_2."""
        assert bicharacter(a2(), (2, 1), (2, 1)) == T ** 3

    def test_biadditive_random(self):
        """Test biadditivity on random triples."""
        rng = random.Random(7)
        field = ground_field(1)
        for _ in range(20):
            rows = [[rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(3)] for _ in range(3)]
            q = BraidingMatrix.from_rows(field, rows)
            a, b, c = (tuple(rng.randint(-2, 3) for _ in range(3)) for _ in range(3))
            ab = add_degrees(a, b)
            bc = add_degrees(b, c)
            assert bicharacter(q, ab, c) == bicharacter(q, a, c) * bicharacter(q, b, c)
            assert bicharacter(q, a, bc) == bicharacter(q, a, b) * bicharacter(q, a, c)


class TestCartanEntries:
    """Test m_ij and the generalized Cartan matrix."""

    def test_generic_inverse(self):
        """Test q_ii = t, edge t^-1 gives m = 1."""
        assert m_ij(a2(), 1, 2) == 1

    def test_trivial_edge(self):
        """Test that a trivial edge gives m = 0."""
        q = diagram(["t", "t"], {})
        assert m_ij(q, 1, 2) == 0

    def test_minus_one_label(self):
        """Test q_ii = -1 with any nontrivial edge gives m = 1."""
        q = diagram(["-1", "t"], {(1, 2): "t"})
        assert m_ij(q, 1, 2) == 1

    def test_label_one(self):
        """Test that a vertex labeled 1 gives m = 0."""
        q = diagram(["1", "t"], {(1, 2): "t"})
        assert m_ij(q, 1, 2) == 0

    def test_higher_power(self):
        """Test q_ii = t, edge t^-3 gives m = 3."""
        q = diagram(["t", "t"], {(1, 2): "t^-3"})
        assert m_ij(q, 1, 2) == 3

    def test_undefined(self):
        """Test that q_ii = t with edge t has no m."""
        q = diagram(["t", "t"], {(1, 2): "t"})
        assert m_ij(q, 1, 2) is None
        assert cartan_matrix(q) is None

    def test_root_of_unity_label(self):
        """Test q_ii = zeta_3 where the (m+1)-condition fires."""
        field = ground_field(3)
        q = diagram(["z", "t"], {(1, 2): "t"}, field)
        assert m_ij(q, 1, 2) == 2

    @pytest.mark.parametrize("edge,expected", [("z^2", 1), ("z", 2), ("1/t", 2), ("-1", 2)])
    def test_root_of_unity_edges(self, edge, expected):
        """Test q_ii = zeta_3 against edges that cancel early or never."""
        q = diagram(["z", "t"], {(1, 2): edge}, ground_field(3))
        assert m_ij(q, 1, 2) == expected

    def test_constant_scan(self):
        """Test constant labels of infinite order."""
        q = diagram(["2", "t"], {(1, 2): "1/4"})
        assert m_ij(q, 1, 2) == 2
        q = diagram(["2", "t"], {(1, 2): "3"})
        assert m_ij(q, 1, 2, constant_scan=8) is None

    def test_same_vertex(self):
        """Test that m_ii is rejected."""
        with pytest.raises(InvalidOperandError):
            m_ij(a2(), 1, 1)

    def test_cartan_a2(self):
        """Test the Cartan matrix of generic A_2."""
        assert cartan_matrix(a2()) == [[2, -1], [-1, 2]]

    def test_zero_iff_trivial(self):
        """Test m_ij = 0 exactly when the edge is trivial or q_ii = 1."""
        rng = random.Random(11)
        labels = ["t", "-1", "1/t", "t^2", "1", "2"]
        edges = ["1", "t", "1/t", "t^-2", "-1"]
        for _ in range(40):
            q = diagram([rng.choice(labels), rng.choice(labels)], {(1, 2): rng.choice(edges)})
            m = m_ij(q, 1, 2)
            trivial = q.edge_label(1, 2).is_one or q.vertex_label(1).is_one
            assert (m == 0) == trivial


class TestNecessaryConditions:
    """Test check_necessary_conditions on a fixed matrix of diagrams."""

    @pytest.mark.parametrize(
        "labels,edges,expected",
        [
            # chains and trees
            (["t", "t"], {(1, 2): "1/t"}, []),
            (["t", "t", "t", "t"], {(1, 2): "1/t", (2, 3): "1/t", (3, 4): "1/t"}, []),
            (["1", "t"], {}, []),
            (["1", "t"], {(1, 2): "t"}, ["label-one-edge"]),
            (["t", "1", "t"], {(1, 2): "t", (2, 3): "t"}, ["label-one-edge"]),
            # 4- and 5-cycles
            (
                ["-1", "-1", "-1", "-1"],
                {(1, 2): "t", (2, 3): "t", (3, 4): "t", (1, 4): "t"},
                ["chordless-cycle"],
            ),
            (
                ["t", "t", "t", "t", "t"],
                {(1, 2): "1/t", (2, 3): "1/t", (3, 4): "1/t", (4, 5): "1/t", (1, 5): "1/t"},
                ["chordless-cycle"],
            ),
            # triangles
            (["-1", "-1", "-1"], {(1, 2): "t", (1, 3): "t", (2, 3): "t^-2"}, []),
            (["-1", "-1", "-1"], {(1, 2): "t", (1, 3): "t", (2, 3): "t"}, ["triangle-edges"]),
            (["t", "t", "t"], {(1, 2): "1/t", (1, 3): "1/t", (2, 3): "t^2"}, ["triangle-vertices"]),
            (["t", "-1", "-1"], {(1, 2): "1/t", (1, 3): "t", (2, 3): "1"}, []),
            (["t", "-1", "-1"], {(1, 2): "t", (1, 3): "t", (2, 3): "t^-2"}, []),
            (["-1", "t", "t"], {(1, 2): "1/t", (1, 3): "1/t", (2, 3): "t^2"}, []),
            (
                ["-1", "t", "t"],
                {(1, 2): "t^-2", (1, 3): "1/t", (2, 3): "t^3"},
                ["triangle-refined"],
            ),
        ],
    )
    def test_decision_matrix(self, labels, edges, expected):
        """Test the reported violation kinds for each diagram."""
        assert kinds(diagram(labels, edges)) == expected

    def test_square_with_chord(self):
        """Test that a chord breaks a 4-cycle into triangles."""
        q = diagram(
            ["-1", "-1", "-1", "-1"],
            {(1, 2): "t", (2, 3): "t", (3, 4): "t", (1, 4): "t", (1, 3): "t^-2"},
        )
        assert chordless_cycles(q) == []
        assert triangles(q) == [(1, 2, 3), (1, 3, 4)]
        assert "chordless-cycle" not in kinds(q)

    def test_four_cycle_reported_once(self):
        """Test that each cycle is reported once from its least vertex."""
        q = diagram(
            ["-1", "-1", "-1", "-1"],
            {(1, 2): "t", (2, 3): "t", (3, 4): "t", (1, 4): "t"},
        )
        assert chordless_cycles(q) == [(1, 2, 3, 4)]

    @pytest.mark.parametrize(
        "tag", [SUPER_A_J2, SUPER_A_J123, D21A_FIRST, D21A_SECOND, D21A_TRIANGLE]
    )
    def test_catalog_diagrams_pass(self, tag):
        """Test that the exceptional braidings satisfy the necessary conditions."""
        assert check_necessary_conditions(entry(tag).braiding) == []

    def test_classification_remark_triangle(self):
        """Test the extra rank-3 triangle conditions."""
        q = entry(D21A_TRIANGLE).braiding
        assert check_classification_remark(q) == []
        bad = diagram(["-1", "t", "t"], {(1, 2): "1/t", (1, 3): "1/t", (2, 3): "t^2"})
        remarks = check_classification_remark(bad)
        assert remarks
        assert all(v.kind == "classification-remark" for v in remarks)

    def test_classification_remark_ignores_chains(self):
        """Test that chains are outside the remark's scope."""
        assert check_classification_remark(entry(SUPER_A_J2).braiding) == []


class TestExtendByRoot:
    """Test extend_by_root."""

    def test_sum_of_orthogonal_roots(self):
        """Test beta = alpha_1 + alpha_2 with a trivial edge."""
        q = diagram(["t", "t^2"], {})
        w = extend_by_root(q, (1, 1))
        assert w.vertex_label(3) == T ** 3
        assert w.edge_label(1, 3) == T ** 2
        assert w.edge_label(2, 3) == T ** 4

    def test_a2_extended_by_x112(self):
        """Test the labels of A_2 extended by the degree of x_112."""
        w = extend_by_root(a2(), (2, 1))
        assert w.edge_label(1, 3) == T ** 3
        assert w.edge_label(2, 3) == 1
        assert w.vertex_label(3) == T ** 3

    def test_simple_root_duplicates(self):
        """Test that beta = alpha_i copies vertex i's labels."""
        q = diagram(["t", "-1"], {(1, 2): "1/t"})
        w = extend_by_root(q, (1, 0))
        assert w.vertex_label(3) == q.vertex_label(1)
        assert w.edge_label(2, 3) == q.edge_label(1, 2)

    def test_restriction_returns_input(self):
        """Test that restricting to the original vertices gives q back."""
        q = diagram(["t", "-1", "1/t"], {(1, 2): "1/t", (2, 3): "t"})
        assert extend_by_root(q, (1, 2, 1)).restrict([1, 2, 3]) == q

    def test_zero_beta(self):
        """Test that beta = 0 is rejected."""
        with pytest.raises(InvalidOperandError):
            extend_by_root(a2(), (0, 0))
        with pytest.raises(InvalidOperandError):
            extend_by_root(a2(), (1, -1))


class TestConnectedComponents:
    """Test connected_components."""

    def test_disconnected_pair(self):
        """Test two vertices with a trivial edge."""
        assert connected_components(diagram(["t", "t"], {})) == [[1], [2]]

    def test_chain(self):
        """Test a chain is one component."""
        q = diagram(["t", "-1", "1/t"], {(1, 2): "1/t", (2, 3): "t"})
        assert connected_components(q) == [[1, 2, 3]]

    def test_two_blocks(self):
        """Test two rank-3 chains glued with trivial edges."""
        edges = {(1, 2): "1/t", (2, 3): "t", (4, 5): "1/t", (5, 6): "t"}
        q = diagram(["t", "-1", "1/t", "t", "-1", "1/t"], edges)
        assert connected_components(q) == [[1, 2, 3], [4, 5, 6]]


class TestRecognition:
    """Test recognize_exceptional_type."""

    @pytest.mark.parametrize(
        "tag", [SUPER_A_J2, SUPER_A_J123, D21A_FIRST, D21A_SECOND, D21A_TRIANGLE]
    )
    def test_catalog_recognized(self, tag):
        """Test that every catalog braiding is recognized as itself."""
        assert recognize_exceptional_type(entry(tag).braiding) == tag

    def test_relabeled_chain(self):
        """Test recognition up to vertex relabeling."""
        q = entry(SUPER_A_J2).braiding.permute((2, 3, 1))
        tag, order = recognize_with_relabeling(q)
        assert tag == SUPER_A_J2
        assert recognize_exceptional_type(q.permute(order)) == SUPER_A_J2

    def test_triangle_from_diagram(self):
        """Test the triangle with edges zeta_3, t and (zeta_3 t)^-1."""
        field = ground_field(3)
        q = diagram(["-1", "-1", "-1"], {(1, 2): "z", (1, 3): "t", (2, 3): "1/(z*t)"}, field)
        assert recognize_exceptional_type(q) == D21A_TRIANGLE

    def test_a2_is_other(self):
        """Test that generic A_2 is not exceptional."""
        assert recognize_exceptional_type(a2()) == OTHER
