"""Graded quotients of T(V) by homogeneous ideals, computed degree by degree.

The alpha-component A_alpha of T(V)/I is spanned by the words x_i b with b
a basis word of A_(alpha - alpha_i). Inside that span the ideal is spanned
by the reduced products g b, g a relation and b a basis word of the
complementary degree. Row reduction with pivots at the largest words then
leaves the degree-lexicographically least words as the basis.
"""
import logging
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from nicholsbench.core.braiding import (
    BraidingMatrix,
    MultiDegree,
    check_degree,
    degrees_up_to,
    is_nonnegative,
    simple_root,
    subtract_degrees,
)
from nicholsbench.core.coeff import Scalar
from nicholsbench.core.errors import (
    CutoffExceededError,
    IllFormedRelationError,
    NonHomogeneousError,
)
from nicholsbench.core.freealg import FreeAlgebra, FreeElement, TensorElement, Word, word_degree
from nicholsbench.core.linalg import EchelonBasis
from nicholsbench.core.relexpr import RelExpr, eval_rel_expr, parse_rel_expr

logger = logging.getLogger(__name__)

DEFAULT_CUTOFF = 8

LinearForm = Dict[Word, Scalar]


def _as_relation(relation: Union[str, RelExpr]) -> RelExpr:
    return parse_rel_expr(relation) if isinstance(relation, str) else relation


@dataclass
class Presentation:
    """A braiding together with homogeneous relations generating an ideal of T(V).

    Attributes:
        braiding: The braiding matrix
        relations: Relation expressions
        name: Identifier used in reports
        params: Named scalars the relations may reference
    """

    braiding: BraidingMatrix
    relations: List[RelExpr] = field(default_factory=list)
    name: str = "presentation"
    params: Dict[str, Scalar] = field(default_factory=dict)
    _algebra: Optional[FreeAlgebra] = field(default=None, init=False, repr=False, compare=False)
    _evaluated: Optional[List[FreeElement]] = field(
        default=None, init=False, repr=False, compare=False
    )
    _engine: Optional["_QuotientEngine"] = field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        self.relations = [_as_relation(relation) for relation in self.relations]

    @property
    def theta(self) -> int:
        return self.braiding.theta

    @property
    def algebra(self) -> FreeAlgebra:
        if self._algebra is None:
            self._algebra = FreeAlgebra(self.braiding)
        return self._algebra

    def add_relation(self, relation: Union[str, RelExpr]) -> "Presentation":
        """Append a relation (supports chaining)."""
        self.relations.append(_as_relation(relation))
        self._evaluated = None
        self._engine = None
        return self

    def with_relations(
        self, relations: Sequence[Union[str, RelExpr]], name: Optional[str] = None
    ) -> "Presentation":
        """A new presentation over the same braiding."""
        return Presentation(
            self.braiding,
            [_as_relation(relation) for relation in relations],
            name or self.name,
            dict(self.params),
        )

    def without_relation(self, k: int) -> "Presentation":
        remaining = self.relations[:k] + self.relations[k + 1 :]
        return self.with_relations(remaining, f"{self.name}-without-{k}")

    def evaluate(self, relation: Union[str, RelExpr]) -> FreeElement:
        """Evaluate any DSL expression in this presentation's T(V)."""
        return eval_rel_expr(_as_relation(relation), self.algebra, self.params)

    def evaluated_relations(self) -> List[FreeElement]:
        """Relations as elements of T(V).

        Raises:
            IllFormedRelationError: If a relation is zero, not homogeneous or
                of total degree below 2
        """
        if self._evaluated is None:
            evaluated = []
            for relation in self.relations:
                value = self.evaluate(relation)
                if value.is_zero:
                    raise IllFormedRelationError(
                        f"relation {relation.to_text()} is zero in T(V)", relation.span
                    )
                try:
                    degree = value.degree
                except NonHomogeneousError:
                    raise IllFormedRelationError(
                        f"relation {relation.to_text()} is not homogeneous", relation.span
                    ) from None
                if sum(degree) < 2:
                    raise IllFormedRelationError(
                        f"relation {relation.to_text()} has total degree {sum(degree)} < 2",
                        relation.span,
                    )
                evaluated.append(value)
            self._evaluated = evaluated
        return list(self._evaluated)

    def relation_degrees(self) -> List[MultiDegree]:
        return [value.degree for value in self.evaluated_relations()]

    def quotient(self, cutoff: int = DEFAULT_CUTOFF) -> "GradedQuotient":
        if self._engine is None:
            self._engine = _QuotientEngine(self)
        return GradedQuotient(self, cutoff, self._engine)

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "braiding": self.braiding.to_dict(),
            "params": {name: str(value) for name, value in self.params.items()},
            "relations": [relation.to_text() for relation in self.relations],
        }


@dataclass
class _Component:
    basis: List[Word]
    forms: Dict[Word, LinearForm]


class _QuotientEngine:
    """Component and normal-form caches shared by every view of one presentation."""

    def __init__(self, presentation: Presentation):
        self.field = presentation.braiding.field
        self.theta = presentation.theta
        self.relations: List[Tuple[MultiDegree, List[Tuple[Word, Scalar]]]] = [
            (value.degree, value.terms()) for value in presentation.evaluated_relations()
        ]
        self._components: Dict[MultiDegree, _Component] = {}
        self._words: Dict[Word, LinearForm] = {}
        self._lock = threading.RLock()

    def component(self, alpha: MultiDegree) -> _Component:
        with self._lock:
            cached = self._components.get(alpha)
            if cached is None:
                cached = self._build(alpha)
                self._components[alpha] = cached
            return cached

    def _build(self, alpha: MultiDegree) -> _Component:
        one = self.field.one()
        if not any(alpha):
            return _Component([()], {(): {(): one}})
        candidates: List[Word] = []
        for i in range(1, self.theta + 1):
            if alpha[i - 1] > 0:
                below = self.component(subtract_degrees(alpha, simple_root(i, self.theta)))
                candidates.extend((i,) + word for word in below.basis)
        candidates.sort(reverse=True)
        column = {word: k for k, word in enumerate(candidates)}
        echelon = EchelonBasis()
        for degree, terms in self.relations:
            rest = subtract_degrees(alpha, degree)
            if not is_nonnegative(rest):
                continue
            for word in self.component(rest).basis:
                vector: Dict[int, Scalar] = {}
                for relation_word, coefficient in terms:
                    head = relation_word[0]
                    for tail, value in self.word_form(relation_word[1:] + word).items():
                        k = column[(head,) + tail]
                        total = vector.get(k)
                        product = coefficient * value
                        total = product if total is None else total + product
                        if total.is_zero:
                            vector.pop(k, None)
                        else:
                            vector[k] = total
                echelon.add(vector)
        pivots = set(echelon.pivots)
        forms: Dict[Word, LinearForm] = {}
        for k, word in enumerate(candidates):
            if k in pivots:
                forms[word] = {
                    candidates[c]: -value for c, value in echelon.row(k).items() if c != k
                }
            else:
                forms[word] = {word: one}
        basis = sorted(word for k, word in enumerate(candidates) if k not in pivots)
        logger.debug(
            "Component %s: %d candidates, rank %d, dimension %d",
            alpha,
            len(candidates),
            echelon.rank,
            len(basis),
        )
        return _Component(basis, forms)

    def word_form(self, word: Word) -> LinearForm:
        """Normal form of a single word as a map basis word -> coefficient."""
        cached = self._words.get(word)
        if cached is not None:
            return cached
        if not word:
            return {(): self.field.one()}
        component = self.component(word_degree(word, self.theta))
        form = component.forms.get(word)
        if form is None:
            form = {}
            head = word[0]
            for tail, value in self.word_form(word[1:]).items():
                for target, coefficient in component.forms[(head,) + tail].items():
                    total = form.get(target)
                    total = value * coefficient if total is None else total + value * coefficient
                    if total.is_zero:
                        form.pop(target, None)
                    else:
                        form[target] = total
        with self._lock:
            self._words[word] = form
        return form


class GradedQuotient:
    """T(V)/I truncated at total degree ``cutoff``."""

    def __init__(
        self,
        presentation: Presentation,
        cutoff: int = DEFAULT_CUTOFF,
        engine: Optional[_QuotientEngine] = None,
    ):
        self.presentation = presentation
        self.cutoff = cutoff
        self._engine = engine or _QuotientEngine(presentation)

    @property
    def theta(self) -> int:
        return self.presentation.theta

    def _check_total(self, total: int):
        if total > self.cutoff:
            raise CutoffExceededError(total, self.cutoff)

    def basis(self, alpha: MultiDegree) -> List[Word]:
        """Degree-lex-least basis words of the alpha-component."""
        alpha = check_degree(self.presentation.braiding, tuple(alpha))
        if not is_nonnegative(alpha):
            return []
        self._check_total(sum(alpha))
        return list(self._engine.component(alpha).basis)

    def dimension(self, alpha: MultiDegree) -> int:
        return len(self.basis(alpha))

    def hilbert_table(self, D: Optional[int] = None) -> Dict[MultiDegree, int]:
        """Dimensions of every component of total degree at most D."""
        D = self.cutoff if D is None else D
        self._check_total(D)
        return {alpha: self.dimension(alpha) for alpha in degrees_up_to(self.theta, D)}

    def word_normal_form(self, word: Word) -> FreeElement:
        self._check_total(len(word))
        return FreeElement(
            self.presentation.braiding.field, self.theta, self._engine.word_form(tuple(word))
        )

    def normal_form(self, u: FreeElement) -> FreeElement:
        """Projection onto the span of basis words."""
        self._check_total(u.total_degree)
        result: Dict[Word, Scalar] = {}
        for word, coefficient in u.terms():
            for target, value in self._engine.word_form(word).items():
                total = result.get(target)
                total = coefficient * value if total is None else total + coefficient * value
                if total.is_zero:
                    result.pop(target, None)
                else:
                    result[target] = total
        return FreeElement(u.field, u.theta, result)

    def is_zero(self, u: FreeElement) -> bool:
        return self.normal_form(u).is_zero

    def reduce_tensor(self, tensor: TensorElement) -> TensorElement:
        """Normal form applied to every leg."""
        for leg in range(tensor.legs):
            tensor = tensor.map_words(leg, self.word_normal_form)
        return tensor

    def is_primitive(self, u: FreeElement) -> bool:
        """Whether Delta(u) - u (x) 1 - 1 (x) u lies in I (x) T(V) + T(V) (x) I."""
        self._check_total(u.total_degree)
        defect = self.presentation.algebra.primitive_defect(u, self.cutoff)
        return self.reduce_tensor(defect).is_zero

    def is_q_central(self, u: FreeElement) -> bool:
        """Whether u x_i = chi(deg u, alpha_i) x_i u in the quotient for every i."""
        degree = u.degree
        self._check_total(sum(degree) + 1)
        algebra = self.presentation.algebra
        for i in range(1, self.theta + 1):
            x = algebra.gen(i)
            factor = algebra.chi(degree, simple_root(i, self.theta))
            if not self.is_zero(u * x - (x * u).scale(factor)):
                logger.debug("Not q-central: fails against x_%d", i)
                return False
        return True


def component_basis(
    presentation: Presentation, alpha: MultiDegree, cutoff: int = DEFAULT_CUTOFF
) -> List[Word]:
    return presentation.quotient(cutoff).basis(alpha)


def hilbert_table(presentation: Presentation, D: int = DEFAULT_CUTOFF) -> Dict[MultiDegree, int]:
    return presentation.quotient(D).hilbert_table(D)


def normal_form(
    presentation: Presentation, u: FreeElement, cutoff: int = DEFAULT_CUTOFF
) -> FreeElement:
    return presentation.quotient(cutoff).normal_form(u)


def is_zero_in_quotient(
    presentation: Presentation, u: FreeElement, cutoff: int = DEFAULT_CUTOFF
) -> bool:
    return presentation.quotient(cutoff).is_zero(u)


def is_primitive_in_quotient(
    presentation: Presentation, u: FreeElement, cutoff: int = DEFAULT_CUTOFF
) -> bool:
    return presentation.quotient(cutoff).is_primitive(u)


def is_q_central(
    presentation: Presentation, u: FreeElement, cutoff: int = DEFAULT_CUTOFF
) -> bool:
    return presentation.quotient(cutoff).is_q_central(u)


@dataclass
class RelationCheck:
    """Primitivity of one relation modulo the relations of smaller total degree."""

    relation: str
    degree: MultiDegree
    primitive: bool

    def to_dict(self) -> Dict:
        return {"relation": self.relation, "degree": list(self.degree), "primitive": self.primitive}


def check_well_formed(presentation: Presentation) -> List[RelationCheck]:
    """Test each relation for primitivity against the lower-degree sub-presentation."""
    values = presentation.evaluated_relations()
    totals = [value.total_degree for value in values]
    results = []
    below: Dict[int, Presentation] = {}
    for relation, value, total in zip(presentation.relations, values, totals):
        if total not in below:
            lower = [r for r, t in zip(presentation.relations, totals) if t < total]
            below[total] = presentation.with_relations(
                lower, f"{presentation.name}-below-{total}"
            )
        primitive = below[total].quotient(total).is_primitive(value)
        results.append(RelationCheck(relation.to_text(), value.degree, primitive))
        logger.debug("Relation %s primitive below degree %d: %s", relation, total, primitive)
    return results
