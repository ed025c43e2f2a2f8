"""Catalog entries: braiding, presentations, PBW data and closed-form series."""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Union

from nicholsbench.core.braiding import BraidingMatrix, MultiDegree, m_ij
from nicholsbench.core.coeff import GroundField, Scalar, bind_scalars
from nicholsbench.core.errors import CatalogError, UndefinedCartanEntryError
from nicholsbench.core.freealg import FreeAlgebra, word_sort_key
from nicholsbench.core.linalg import EchelonBasis
from nicholsbench.core.quotient import Presentation
from nicholsbench.core.relexpr import RelExpr, eval_rel_expr, parse_rel_expr
from nicholsbench.core.series import RationalSeries

logger = logging.getLogger(__name__)


def _as_expr(expr: Union[str, RelExpr]) -> RelExpr:
    return parse_rel_expr(expr) if isinstance(expr, str) else expr


@dataclass
class PBWGenerator:
    """One PBW generator with its largest exponent (None when unbounded)."""

    expr: RelExpr
    height: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"expr": self.expr.to_text(), "height": self.height}


@dataclass
class PBWSpec:
    """Ordered PBW generators; monomials are ordered products with bounded exponents."""

    generators: List[PBWGenerator] = field(default_factory=list)

    def add(self, expr: Union[str, RelExpr], height: Optional[int] = None) -> "PBWSpec":
        """Append a generator.

        Args:
            expr: DSL text or parsed expression
            height: Largest allowed exponent, or None for unbounded

        Returns:
            Self for method chaining
        """
        if height is not None and height < 0:
            raise CatalogError(f"height must be nonnegative, got {height}")
        self.generators.append(PBWGenerator(_as_expr(expr), height))
        return self

    @property
    def heights(self) -> List[Optional[int]]:
        return [generator.height for generator in self.generators]

    def degrees(self, presentation: Presentation) -> List[MultiDegree]:
        return [presentation.evaluate(generator.expr).degree for generator in self.generators]

    def series(self, presentation: Presentation) -> RationalSeries:
        """Series counting the PBW monomials."""
        return RationalSeries.from_pbw(presentation.theta, self.degrees(presentation), self.heights)

    def __len__(self) -> int:
        return len(self.generators)

    def to_dict(self) -> List[Dict[str, Any]]:
        return [generator.to_dict() for generator in self.generators]


@dataclass
class EntryConfig:
    """Identity and parameters of a catalog entry."""

    tag: str
    description: str
    M: int = 1
    L: Optional[int] = None
    transcendental: str = "t"
    metadata: Dict[str, Any] = field(default_factory=dict)
    gkdim: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tag": self.tag,
            "description": self.description,
            "M": self.M,
            "L": self.L,
            "transcendental": self.transcendental,
            "gkdim": self.gkdim,
            "metadata": self.metadata,
        }


class CatalogEntry:
    """A braiding with its eminent and Nichols presentations.

    The Nichols relations are recorded as they are added, so dropping an
    eminent relation later (``without_eminent_relation``) leaves the Nichols
    presentation intact.
    """

    def __init__(
        self,
        config: EntryConfig,
        braiding: BraidingMatrix,
        params: Optional[Dict[str, str]] = None,
    ):
        """Initialize an entry.

        Args:
            config: Tag, description and parameters
            braiding: Braiding matrix of the entry
            params: Named scalar bindings as literal text
        """
        self.config = config
        self.braiding = braiding
        self.param_texts: Dict[str, str] = dict(params or {})
        self.params: Dict[str, Scalar] = bind_scalars(braiding.field, self.param_texts)
        self.eminent_relations: List[RelExpr] = []
        self.nichols_relations: List[RelExpr] = []
        self.central: Optional[RelExpr] = None
        self.pbw = PBWSpec()
        self.series: Optional[RationalSeries] = None
        self._eminent: Optional[Presentation] = None

    @property
    def tag(self) -> str:
        return self.config.tag

    @property
    def field(self) -> GroundField:
        return self.braiding.field

    @property
    def theta(self) -> int:
        return self.braiding.theta

    def add_relation(self, expr: Union[str, RelExpr]) -> "CatalogEntry":
        """Add an eminent relation (also a Nichols relation)."""
        relation = _as_expr(expr)
        self.eminent_relations.append(relation)
        self.nichols_relations.append(relation)
        self._eminent = None
        return self

    def add_nichols_relation(self, expr: Union[str, RelExpr]) -> "CatalogEntry":
        self.nichols_relations.append(_as_expr(expr))
        return self

    def set_central(self, expr: Union[str, RelExpr], nichols: bool = True) -> "CatalogEntry":
        """Set z, the element whose quotient gives the Nichols algebra."""
        self.central = _as_expr(expr)
        if nichols:
            self.nichols_relations.append(self.central)
        return self

    def add_pbw_generator(
        self, expr: Union[str, RelExpr], height: Optional[int] = None
    ) -> "CatalogEntry":
        self.pbw.add(expr, height)
        return self

    def set_series(self, numerator: str, denominator: str = "1") -> "CatalogEntry":
        self.series = RationalSeries.from_text(self.theta, numerator, denominator)
        return self

    def eminent(self) -> Presentation:
        """Presentation of the eminent pre-Nichols algebra."""
        if self._eminent is None:
            self._eminent = Presentation(
                self.braiding, list(self.eminent_relations), f"{self.tag}-eminent", self.params
            )
        return self._eminent

    def nichols(self) -> Presentation:
        return Presentation(
            self.braiding, list(self.nichols_relations), f"{self.tag}-nichols", self.params
        )

    def central_element(self):
        if self.central is None:
            raise CatalogError(f"entry {self.tag} has no central element")
        return self.eminent().evaluate(self.central)

    @property
    def central_degree(self) -> MultiDegree:
        return self.central_element().degree

    def without_eminent_relation(self, k: int) -> "CatalogEntry":
        """Copy with eminent relation k removed; Nichols relations are kept as they are."""
        if not 0 <= k < len(self.eminent_relations):
            raise CatalogError(f"entry {self.tag} has no relation {k}")
        copy = CatalogEntry(self.config, self.braiding, self.param_texts)
        copy.eminent_relations = self.eminent_relations[:k] + self.eminent_relations[k + 1 :]
        copy.nichols_relations = list(self.nichols_relations)
        copy.central = self.central
        copy.pbw = self.pbw
        copy.series = self.series
        return copy

    def to_dict(self) -> Dict[str, Any]:
        return {
            "config": self.config.to_dict(),
            "braiding": self.braiding.to_dict(),
            "params": dict(self.param_texts),
            "eminent_relations": [r.to_text() for r in self.eminent_relations],
            "nichols_relations": [r.to_text() for r in self.nichols_relations],
            "central": self.central.to_text() if self.central else None,
            "pbw": self.pbw.to_dict(),
            "series": self.series.to_dict() if self.series else None,
        }

    def __repr__(self) -> str:
        return f"CatalogEntry(tag='{self.tag}', relations={len(self.eminent_relations)})"


def cartan_serre_presentation(q: BraidingMatrix, name: str = "cartan-serre") -> Presentation:
    """Quantum Serre relations (ad_c x_i)^(m_ij + 1) x_j for all i != j.

    Relations of one degree that are linearly dependent on earlier ones are
    dropped.

    Raises:
        UndefinedCartanEntryError: If some m_ij does not exist
    """
    algebra = FreeAlgebra(q)
    kept: List[RelExpr] = []
    spans: Dict[MultiDegree, EchelonBasis] = {}
    columns: Dict[MultiDegree, Dict] = {}
    for i in range(1, q.theta + 1):
        for j in range(1, q.theta + 1):
            if i == j:
                continue
            m = m_ij(q, i, j)
            if m is None:
                raise UndefinedCartanEntryError(i, j)
            text = f"x({i},{j})" if m == 0 else f"ad({i}; x({j}))^{m + 1}"
            relation = parse_rel_expr(text)
            value = eval_rel_expr(relation, algebra)
            degree = value.degree
            index = columns.setdefault(degree, {})
            for word in sorted(value.words(), key=word_sort_key):
                index.setdefault(word, len(index))
            vector = {index[word]: coefficient for word, coefficient in value.terms()}
            if spans.setdefault(degree, EchelonBasis()).add(vector) is None:
                logger.debug("Dropping %s: dependent on earlier relations", text)
                continue
            kept.append(relation)
    return Presentation(q, kept, name)


Block = Union[CatalogEntry, Presentation]


def _block_presentation(block: Block) -> Presentation:
    return block.eminent() if isinstance(block, CatalogEntry) else block


def compose(blocks: Sequence[Block], name: Optional[str] = None) -> Presentation:
    """Presentation of the braided tensor product of the blocks.

    The braiding is block diagonal with q_ij = q_ji = 1 across blocks. The
    relations are the block relations (renumbered) and x_ij for every i < j
    in different blocks.

    Raises:
        CatalogError: If there are no blocks or their ground fields differ
    """
    presentations = [_block_presentation(block) for block in blocks]
    if not presentations:
        raise CatalogError("nothing to compose")
    ground = presentations[0].braiding.field
    for presentation in presentations[1:]:
        if presentation.braiding.field != ground:
            raise CatalogError(
                f"cannot compose over {ground} and {presentation.braiding.field}"
            )
    theta = sum(p.theta for p in presentations)
    rows = [[ground.one() for _ in range(theta)] for _ in range(theta)]
    relations: List[RelExpr] = []
    owner: List[int] = []
    offset = 0
    for k, presentation in enumerate(presentations):
        q = presentation.braiding
        for i in range(q.theta):
            owner.append(k)
            for j in range(q.theta):
                rows[offset + i][offset + j] = q.entries[i][j]
        for relation in presentation.relations:
            bound = relation.bind(ground, presentation.params, q.entry)
            relations.append(bound.shift(offset))
        offset += q.theta
    for i in range(1, theta + 1):
        for j in range(i + 1, theta + 1):
            if owner[i - 1] != owner[j - 1]:
                relations.append(parse_rel_expr(f"x({i},{j})"))
    braiding = BraidingMatrix(ground, tuple(tuple(row) for row in rows))
    label = name or "compose(" + ",".join(p.name for p in presentations) + ")"
    logger.info(
        "Composed %d blocks into rank %d with %d relations",
        len(presentations),
        theta,
        len(relations),
    )
    return Presentation(braiding, relations, label)


def composition_hypotheses(blocks: Sequence[Block]) -> List[Dict[str, Any]]:
    """Per block: rank at least 2, or rank 1 with vertex label different from 1."""
    report = []
    for block in blocks:
        presentation = _block_presentation(block)
        q = presentation.braiding
        holds = q.theta >= 2 or not q.vertex_label(1).is_one
        report.append({"block": presentation.name, "theta": q.theta, "holds": holds})
    return report
