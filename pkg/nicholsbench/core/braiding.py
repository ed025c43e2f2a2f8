"""Braiding matrices of diagonal type and their Dynkin diagrams."""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from typing_extensions import TypeAlias

from nicholsbench.core.coeff import GroundField, Scalar, ScalarLike, is_root_of_unity
from nicholsbench.core.errors import (
    DegreeMismatchError,
    InvalidOperandError,
)

logger = logging.getLogger(__name__)

MultiDegree: TypeAlias = Tuple[int, ...]

DEFAULT_CONSTANT_SCAN = 64

SUPER_A_J2 = "SuperA3-J2"
SUPER_A_J123 = "SuperA3-J123"
D21A_FIRST = "D21a-4.1"
D21A_SECOND = "D21a-4.2"
D21A_TRIANGLE = "D21a-4.3"
OTHER = "other"


def simple_root(i: int, theta: int) -> MultiDegree:
    """The degree alpha_i (vertices are numbered from 1)."""
    if not 1 <= i <= theta:
        raise InvalidOperandError(f"vertex {i} out of range 1..{theta}")
    return tuple(1 if k == i - 1 else 0 for k in range(theta))


def add_degrees(a: MultiDegree, b: MultiDegree) -> MultiDegree:
    if len(a) != len(b):
        raise DegreeMismatchError(f"degrees {a} and {b} have different lengths")
    return tuple(x + y for x, y in zip(a, b))


def subtract_degrees(a: MultiDegree, b: MultiDegree) -> MultiDegree:
    if len(a) != len(b):
        raise DegreeMismatchError(f"degrees {a} and {b} have different lengths")
    return tuple(x - y for x, y in zip(a, b))


def scale_degree(a: MultiDegree, k: int) -> MultiDegree:
    return tuple(k * x for x in a)


def total_degree(a: MultiDegree) -> int:
    return sum(a)


def is_nonnegative(a: MultiDegree) -> bool:
    return all(x >= 0 for x in a)


def degree_sort_key(a: MultiDegree) -> Tuple[int, MultiDegree]:
    """Sort key for multidegrees: total degree, then lexicographic."""
    return (sum(a), a)


def degrees_up_to(theta: int, D: int) -> List[MultiDegree]:
    """All multidegrees of length ``theta`` with total degree at most ``D``, sorted."""
    result = [
        alpha
        for alpha in itertools.product(range(D + 1), repeat=theta)
        if sum(alpha) <= D
    ]
    return sorted(result, key=degree_sort_key)


@dataclass(frozen=True)
class DynkinDiagram:
    """Vertex labels q_ii and edge labels q_ij*q_ji for the pairs where that is not 1."""

    field: GroundField
    vertex_labels: Tuple[Scalar, ...]
    edges: Tuple[Tuple[int, int, Scalar], ...]

    @property
    def theta(self) -> int:
        return len(self.vertex_labels)

    def key(self) -> Tuple:
        """Hashable identity of the diagram."""
        return (self.vertex_labels, self.edges)

    def edge_label(self, i: int, j: int) -> Scalar:
        a, b = min(i, j), max(i, j)
        for u, v, label in self.edges:
            if (u, v) == (a, b):
                return label
        return self.field.one()

    def neighbors(self, i: int) -> List[int]:
        result = []
        for u, v, _ in self.edges:
            if u == i:
                result.append(v)
            elif v == i:
                result.append(u)
        return sorted(result)

    def render(self) -> str:
        """Text rendering: one line per vertex, then one per edge."""
        lines = [f"{i}: {label}" for i, label in enumerate(self.vertex_labels, start=1)]
        lines.extend(f"{u}-{v}: {label}" for u, v, label in self.edges)
        return "\n".join(lines)

    def to_dict(self) -> Dict:
        return {
            "vertices": [str(label) for label in self.vertex_labels],
            "edges": [{"pair": [u, v], "label": str(label)} for u, v, label in self.edges],
        }


@dataclass(frozen=True)
class BraidingMatrix:
    """A theta x theta matrix of nonzero scalars q_ij.

    Vertices are numbered from 1; ``entries`` is stored row-major and indexed
    from 0.
    """

    field: GroundField
    entries: Tuple[Tuple[Scalar, ...], ...]
    _diagram: Optional[DynkinDiagram] = field(
        default=None, init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        theta = len(self.entries)
        if theta == 0:
            raise InvalidOperandError("a braiding matrix needs at least one vertex")
        for row in self.entries:
            if len(row) != theta:
                raise DegreeMismatchError("braiding matrix must be square")
            for value in row:
                if value.field != self.field:
                    raise InvalidOperandError("braiding entries must share one ground field")
                if value.is_zero:
                    raise InvalidOperandError("braiding entries must be nonzero")

    @classmethod
    def from_rows(
        cls, field: GroundField, rows: Sequence[Sequence[ScalarLike]]
    ) -> "BraidingMatrix":
        return cls(field, tuple(tuple(field(value) for value in row) for row in rows))

    @classmethod
    def from_diagram(
        cls,
        field: GroundField,
        vertex_labels: Sequence[ScalarLike],
        edge_labels: Mapping[Tuple[int, int], ScalarLike],
    ) -> "BraidingMatrix":
        """Representative with q_ij = edge label for i < j and q_ji = 1.

        Args:
            field: Ground field
            vertex_labels: Labels q_11, ..., q_thetatheta
            edge_labels: Map (i, j) -> q_ij*q_ji; missing pairs mean 1

        Returns:
            A braiding matrix with the requested Dynkin diagram
        """
        theta = len(vertex_labels)
        rows = [[field.one() for _ in range(theta)] for _ in range(theta)]
        for i, label in enumerate(vertex_labels):
            rows[i][i] = field(label)
        for (i, j), label in edge_labels.items():
            if i == j or not (1 <= i <= theta and 1 <= j <= theta):
                raise InvalidOperandError(f"invalid edge ({i}, {j})")
            a, b = min(i, j), max(i, j)
            rows[a - 1][b - 1] = field(label)
        return cls(field, tuple(tuple(row) for row in rows))

    @property
    def theta(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> Scalar:
        """q_ij with vertices numbered from 1."""
        if not (1 <= i <= self.theta and 1 <= j <= self.theta):
            raise InvalidOperandError(f"entry ({i}, {j}) out of range for theta={self.theta}")
        return self.entries[i - 1][j - 1]

    def vertex_label(self, i: int) -> Scalar:
        return self.entry(i, i)

    def edge_label(self, i: int, j: int) -> Scalar:
        return self.entry(i, j) * self.entry(j, i)

    def diagram(self) -> DynkinDiagram:
        if self._diagram is None:
            edges = []
            for i in range(1, self.theta + 1):
                for j in range(i + 1, self.theta + 1):
                    label = self.edge_label(i, j)
                    if not label.is_one:
                        edges.append((i, j, label))
            diagram = DynkinDiagram(
                self.field,
                tuple(self.vertex_label(i) for i in range(1, self.theta + 1)),
                tuple(edges),
            )
            object.__setattr__(self, "_diagram", diagram)
        return self._diagram  # type: ignore[return-value]

    def restrict(self, vertices: Sequence[int]) -> "BraidingMatrix":
        """Braiding of the subspace spanned by ``vertices`` (in the given order)."""
        return BraidingMatrix(
            self.field,
            tuple(tuple(self.entry(i, j) for j in vertices) for i in vertices),
        )

    def permute(self, order: Sequence[int]) -> "BraidingMatrix":
        """Renumber vertices so that new vertex k is old vertex ``order[k-1]``."""
        if sorted(order) != list(range(1, self.theta + 1)):
            raise InvalidOperandError(f"{order} is not a permutation of the vertices")
        return self.restrict(order)

    def render(self) -> str:
        return self.diagram().render()

    def to_dict(self) -> Dict:
        return {
            "theta": self.theta,
            "M": self.field.M,
            "transcendental": self.field.transcendental_name,
            "entries": [[str(value) for value in row] for row in self.entries],
        }


def check_degree(q: BraidingMatrix, a: MultiDegree) -> MultiDegree:
    if len(a) != q.theta:
        raise DegreeMismatchError(f"degree {a} does not have length theta={q.theta}")
    return tuple(a)


def bicharacter(q: BraidingMatrix, a: MultiDegree, b: MultiDegree) -> Scalar:
    """chi(a, b) = prod q_ij^(a_i b_j); signed exponents allowed."""
    check_degree(q, a)
    check_degree(q, b)
    result = q.field.one()
    for i, a_i in enumerate(a):
        if a_i == 0:
            continue
        for j, b_j in enumerate(b):
            if b_j:
                result = result * q.entries[i][j] ** (a_i * b_j)
    return result


def _exponent_from_degrees(base: Scalar, target: Scalar) -> Optional[int]:
    """Candidate m with base^m = target^(-1), read off t-degrees."""
    if base.numerator_degree > 0:
        quotient, remainder = divmod(target.denominator_degree, base.numerator_degree)
    else:
        quotient, remainder = divmod(target.numerator_degree, base.denominator_degree)
    return quotient if remainder == 0 else None


def m_ij(
    q: BraidingMatrix, i: int, j: int, constant_scan: int = DEFAULT_CONSTANT_SCAN
) -> Optional[int]:
    """Smallest m >= 0 with q_ii^m q~_ij = 1 or q_ii^(m+1) = 1.

    Args:
        q: Braiding matrix
        i: First vertex
        j: Second vertex, different from i
        constant_scan: Scan bound when q_ii is a constant of infinite order

    Returns:
        m_ij, or None when no such m exists

    Raises:
        InvalidOperandError: If i == j
    """
    if i == j:
        raise InvalidOperandError("m_ij needs two distinct vertices")
    q_ii = q.vertex_label(i)
    p = q.edge_label(i, j)
    if p.is_one or q_ii.is_one:
        return 0
    order = is_root_of_unity(q_ii)
    if order is not None:
        # q_ii^order = 1, so m = order - 1 always qualifies
        power = q.field.one()
        for m in range(order - 1):
            if (power * p).is_one:
                return m
            power = power * q_ii
        return order - 1
    if not q_ii.is_constant:
        m = _exponent_from_degrees(q_ii, p)
        if m is not None and m >= 1 and (q_ii ** m * p).is_one:
            return m
        return None
    if not p.is_constant:
        return None
    power = q_ii
    for m in range(1, constant_scan + 1):
        if (power * p).is_one:
            return m
        power = power * q_ii
    logger.debug("m_%d%d scan stopped after %d steps", i, j, constant_scan)
    return None


def cartan_matrix(q: BraidingMatrix) -> Optional[List[List[int]]]:
    """Generalized Cartan matrix (c_ii = 2, c_ij = -m_ij), or None if some m_ij is undefined."""
    matrix = []
    for i in range(1, q.theta + 1):
        row = []
        for j in range(1, q.theta + 1):
            if i == j:
                row.append(2)
                continue
            m = m_ij(q, i, j)
            if m is None:
                return None
            row.append(-m)
        matrix.append(row)
    return matrix


@dataclass
class Violation:
    """A failed necessary condition on a Dynkin diagram."""

    kind: str
    vertices: Tuple[int, ...]
    message: str

    def to_dict(self) -> Dict:
        return {"kind": self.kind, "vertices": list(self.vertices), "message": self.message}


def _adjacency(diagram: DynkinDiagram) -> Dict[int, List[int]]:
    return {i: diagram.neighbors(i) for i in range(1, diagram.theta + 1)}


def chordless_cycles(q: BraidingMatrix, min_length: int = 4) -> List[Tuple[int, ...]]:
    """Chordless cycles of the Dynkin diagram, each listed once from its least vertex."""
    adjacency = _adjacency(q.diagram())
    cycles: List[Tuple[int, ...]] = []

    def extend(path: List[int]):
        start, last = path[0], path[-1]
        for nxt in adjacency[last]:
            if nxt == start and len(path) >= 3 and path[1] < path[-1]:
                cycles.append(tuple(path))
            elif nxt > start and nxt not in path:
                # a chord from nxt back into the path (other than to last) kills it
                if any(v in adjacency[nxt] for v in path[1:-1]):
                    continue
                path.append(nxt)
                extend(path)
                path.pop()

    for s in range(1, q.theta + 1):
        extend([s])
    result = []
    for cycle in cycles:
        if len(cycle) < min_length:
            continue
        # the closing vertex must not touch the interior either
        if any(v in adjacency[cycle[0]] for v in cycle[2:-1]):
            continue
        result.append(cycle)
    return sorted(result)


def triangles(q: BraidingMatrix) -> List[Tuple[int, int, int]]:
    diagram = q.diagram()
    adjacency = _adjacency(diagram)
    found = []
    for i, j, k in itertools.combinations(range(1, q.theta + 1), 3):
        if j in adjacency[i] and k in adjacency[i] and k in adjacency[j]:
            found.append((i, j, k))
    return found


def check_necessary_conditions(q: BraidingMatrix) -> List[Violation]:
    """Necessary conditions for a finite-GKdim Nichols algebra.

    An empty list means no violation was found; it does not prove finiteness.
    """
    violations: List[Violation] = []
    for cycle in chordless_cycles(q):
        violations.append(
            Violation("chordless-cycle", cycle, f"{len(cycle)}-cycle {'-'.join(map(str, cycle))}")
        )
    for i, j, k in triangles(q):
        labels = {v: q.vertex_label(v) for v in (i, j, k)}
        if not ((labels[i] + 1) * (labels[j] + 1) * (labels[k] + 1)).is_zero:
            violations.append(
                Violation("triangle-vertices", (i, j, k), "no vertex of the 3-cycle is labeled -1")
            )
        if not (q.edge_label(i, j) * q.edge_label(j, k) * q.edge_label(i, k)).is_one:
            violations.append(
                Violation(
                    "triangle-edges", (i, j, k), "edge labels of the 3-cycle do not multiply to 1"
                )
            )
        minus_one = [v for v in (i, j, k) if labels[v] == -1]
        if len(minus_one) == 1:
            v = minus_one[0]
            others = [w for w in (i, j, k) if w != v]
            if not all((labels[w] * q.edge_label(v, w)).is_one for w in others):
                violations.append(
                    Violation(
                        "triangle-refined",
                        (v, *others),
                        f"vertex {v} is the only -1 and q_jj*q~_{v}j != 1 for a neighbor j",
                    )
                )
    diagram = q.diagram()
    for u, v, _ in diagram.edges:
        for a, b in ((u, v), (v, u)):
            if q.vertex_label(a).is_one:
                violations.append(
                    Violation("label-one-edge", (a, b), f"vertex {a} labeled 1 has an edge to {b}")
                )
    return violations


def check_classification_remark(q: BraidingMatrix) -> List[Violation]:
    """Extra conditions expected of a rank-3 braiding whose diagram is a 3-cycle.

    These come from the rank-3 classification (infinite-dimensional,
    finite-GKdim case) and are reported separately from
    :func:`check_necessary_conditions`.
    """
    if q.theta != 3 or not triangles(q):
        return []
    violations = []
    labels = [q.vertex_label(v) for v in (1, 2, 3)]
    if sum(1 for label in labels if label == -1) < 2:
        violations.append(
            Violation("classification-remark", (1, 2, 3), "fewer than two vertices labeled -1")
        )
    for v in (1, 2, 3):
        label = labels[v - 1]
        if label == -1:
            continue
        if is_root_of_unity(label) is not None:
            violations.append(
                Violation("classification-remark", (v,), f"label of vertex {v} is a root of unity")
            )
        a, b = [w for w in (1, 2, 3) if w != v]
        inverse = label.inverse()
        edges = (q.edge_label(v, a), q.edge_label(v, b))
        same = edges[0] == inverse and edges[1] == inverse
        split = (edges[0] == inverse and edges[1] == inverse * inverse) or (
            edges[1] == inverse and edges[0] == inverse * inverse
        )
        if not (same or split):
            violations.append(
                Violation(
                    "classification-remark",
                    (v, a, b),
                    f"edges at vertex {v} are neither both q^-1 nor q^-1 and q^-2",
                )
            )
    return violations


def extend_by_root(q: BraidingMatrix, beta: MultiDegree) -> BraidingMatrix:
    """Braiding of V + k x_beta, the new vertex appended last."""
    beta = check_degree(q, beta)
    if not is_nonnegative(beta):
        raise InvalidOperandError(f"degree {beta} has negative entries")
    if not any(beta):
        raise InvalidOperandError("cannot extend by the zero degree")
    theta = q.theta
    rows = [list(row) for row in q.entries]
    for i in range(1, theta + 1):
        rows[i - 1].append(bicharacter(q, simple_root(i, theta), beta))
    rows.append(
        [bicharacter(q, beta, simple_root(i, theta)) for i in range(1, theta + 1)]
        + [bicharacter(q, beta, beta)]
    )
    return BraidingMatrix(q.field, tuple(tuple(row) for row in rows))


def connected_components(q: BraidingMatrix) -> List[List[int]]:
    """Vertex sets of the connected components, ordered by least vertex."""
    adjacency = _adjacency(q.diagram())
    seen = set()
    components = []
    for start in range(1, q.theta + 1):
        if start in seen:
            continue
        stack = [start]
        component = []
        seen.add(start)
        while stack:
            v = stack.pop()
            component.append(v)
            for w in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        components.append(sorted(component))
    return components


def _is_root(value: Scalar) -> bool:
    return is_root_of_unity(value) is not None


def _match_chain(q: BraidingMatrix) -> Optional[str]:
    if not q.edge_label(1, 3).is_one or q.vertex_label(2) != -1:
        return None
    first, third = q.vertex_label(1), q.vertex_label(3)
    if q.edge_label(1, 2) != first.inverse() or q.edge_label(2, 3) != third.inverse():
        return None
    if first.is_one or third.is_one:
        return None
    third_parameter = (first * third).inverse()
    if third_parameter.is_one:
        return SUPER_A_J2 if not _is_root(first) else None
    if _is_root(first) and not _is_root(third):
        return D21A_FIRST
    if not _is_root(first) and not _is_root(third) and _is_root(third_parameter):
        return D21A_SECOND
    return None


def _match_minus_one_chain(q: BraidingMatrix) -> Optional[str]:
    if any(q.vertex_label(v) != -1 for v in (1, 2, 3)):
        return None
    if not q.edge_label(1, 3).is_one:
        return None
    left, right = q.edge_label(1, 2), q.edge_label(2, 3)
    if left.is_one or _is_root(left) or right != left.inverse():
        return None
    return SUPER_A_J123


def _match_triangle(q: BraidingMatrix) -> Optional[str]:
    if any(q.vertex_label(v) != -1 for v in (1, 2, 3)):
        return None
    first, second, third = q.edge_label(1, 2), q.edge_label(1, 3), q.edge_label(2, 3)
    if first.is_one or second.is_one or third.is_one:
        return None
    if not (first * second * third).is_one:
        return None
    if _is_root(first) and not _is_root(second) and not _is_root(third):
        return D21A_TRIANGLE
    return None


def recognize_with_relabeling(q: BraidingMatrix) -> Tuple[str, Optional[Tuple[int, ...]]]:
    """Match the Dynkin diagram against the exceptional templates.

    Returns:
        (tag, order) where ``q.permute(order)`` has the template's numbering,
        or ("other", None)
    """
    if q.theta != 3:
        return OTHER, None
    for order in itertools.permutations((1, 2, 3)):
        candidate = q.permute(order)
        for matcher in (_match_chain, _match_minus_one_chain, _match_triangle):
            tag = matcher(candidate)
            if tag is not None:
                return tag, tuple(order)
    return OTHER, None


def recognize_exceptional_type(q: BraidingMatrix) -> str:
    """One of SuperA3-J2, SuperA3-J123, D21a-4.1, D21a-4.2, D21a-4.3 or "other"."""
    return recognize_with_relabeling(q)[0]
