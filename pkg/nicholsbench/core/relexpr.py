"""Relation expressions: a small DSL for elements of T(V).

Grammar (whitespace-insensitive)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := [scalar ['*']] factor (['*'] factor)*
    factor := base ['^' int]
    base   := 'x' '(' int (',' int)* ')'
            | '[' expr ',' expr ']'
            | 'ad' '(' int ';' expr ')' ['^' int]
            | '(' expr ')'

``x(i1,...,ik)`` is the iterated left adjoint ad_c x_i1 (... ad_c x_i(k-1) (x_ik)),
``[a, b]`` the braided commutator and ``ad(i; e)^n`` the n-th adjoint power.
Scalars follow the coefficient literal syntax and may name parameters or
braiding entries ``q(i,j)``.
"""
import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Mapping, Optional, Tuple

import pyparsing as pp

from nicholsbench.core.coeff import GroundField, Scalar, ScalarNode, build_scalar_grammar
from nicholsbench.core.errors import (
    IllFormedRelationError,
    InvalidOperandError,
    NonHomogeneousError,
    RelationSyntaxError,
)
from nicholsbench.core.freealg import FreeAlgebra, FreeElement

logger = logging.getLogger(__name__)

GEN = "gen"
COMMUTATOR = "commutator"
AD = "ad"
POWER = "power"
PRODUCT = "product"
SCALE = "scale"
SUM = "sum"

Span = Tuple[int, int]


@dataclass(frozen=True)
class RelExpr:
    """Syntax tree of a relation expression.

    ``kind`` selects the node type:

    - gen: ``indices`` holds i1..ik
    - commutator: two ``children``
    - ad: ``indices`` = (i,), one child, ``exponent`` n
    - power: one child, ``exponent`` n
    - product: two or more children
    - scale: ``scalar`` times one child
    - sum: children with ``signs`` (+1 or -1)

    Spans are character offsets into the parsed text and do not take part
    in equality.
    """

    kind: str
    indices: Tuple[int, ...] = ()
    children: Tuple["RelExpr", ...] = ()
    exponent: int = 1
    scalar: Optional[ScalarNode] = None
    signs: Tuple[int, ...] = ()
    span: Span = field(default=(0, 0), compare=False)

    def to_text(self) -> str:
        """Canonical DSL text that parses back to an equal tree."""
        kind = self.kind
        if kind == GEN:
            return f"x({','.join(map(str, self.indices))})"
        if kind == COMMUTATOR:
            return f"[{self.children[0].to_text()}, {self.children[1].to_text()}]"
        if kind == AD:
            text = f"ad({self.indices[0]}; {self.children[0].to_text()})"
            return text if self.exponent == 1 else f"{text}^{self.exponent}"
        if kind == POWER:
            return f"{self.children[0]._factor_text()}^{self.exponent}"
        if kind == PRODUCT:
            return "".join(child._factor_text() for child in self.children)
        if kind == SCALE:
            scalar = self.scalar.to_text()  # type: ignore[union-attr]
            if self.scalar.kind in ("add", "sub", "neg"):  # type: ignore[union-attr]
                scalar = f"({scalar})"
            child = self.children[0]
            body = f"({child.to_text()})" if child.kind in (SUM, SCALE) else child.to_text()
            return f"{scalar}*{body}"
        pieces = []
        for k, (sign, child) in enumerate(zip(self.signs, self.children)):
            text = f"({child.to_text()})" if child.kind == SUM else child.to_text()
            if k == 0:
                pieces.append(text if sign > 0 else f"-{text}")
            else:
                pieces.append(f"{'+' if sign > 0 else '-'} {text}")
        return " ".join(pieces)

    def _factor_text(self) -> str:
        if self.kind in (SUM, SCALE, PRODUCT, POWER):
            return f"({self.to_text()})"
        return self.to_text()

    def to_dict(self) -> Dict:
        """AST dump."""
        node: Dict = {"type": self.kind}
        if self.kind in (GEN, AD):
            node["indices"] = list(self.indices)
        if self.kind in (AD, POWER):
            node["exponent"] = self.exponent
        if self.kind == SCALE:
            node["scalar"] = self.scalar.to_text()  # type: ignore[union-attr]
        if self.kind == SUM:
            node["signs"] = list(self.signs)
        if self.children:
            node["children"] = [child.to_dict() for child in self.children]
        return node

    def count(self, kind: str) -> int:
        """Number of nodes of the given kind in the tree."""
        return (self.kind == kind) + sum(child.count(kind) for child in self.children)

    def max_index(self) -> int:
        own = max(self.indices, default=0)
        return max([own] + [child.max_index() for child in self.children])

    def shift(self, offset: int) -> "RelExpr":
        """Renumber generators and braiding-entry references by ``offset``."""
        return replace(
            self,
            indices=tuple(i + offset for i in self.indices),
            children=tuple(child.shift(offset) for child in self.children),
            scalar=self.scalar.shift_entries(offset) if self.scalar is not None else None,
        )

    def bind(
        self,
        field: GroundField,
        params: Optional[Mapping[str, Scalar]] = None,
        entries=None,
    ) -> "RelExpr":
        """Replace every scalar by its value, so the tree no longer needs a context."""
        scalar = None
        if self.scalar is not None:
            scalar = ScalarNode("const", field.evaluate(self.scalar, params, entries))
        return replace(
            self,
            children=tuple(child.bind(field, params, entries) for child in self.children),
            scalar=scalar,
        )

    def __str__(self) -> str:
        return self.to_text()


def _with_span(tokens) -> RelExpr:
    start, inner, end = tokens[0], tokens[1], tokens[2]
    return replace(inner[0], span=(start, end))


def _located(element: pp.ParserElement) -> pp.ParserElement:
    return pp.Located(element).set_parse_action(_with_span)


def _make_term(tokens) -> RelExpr:
    items = list(tokens)
    scalar = items[0] if isinstance(items[0], ScalarNode) else None
    factors = [item for item in items if isinstance(item, RelExpr)]
    body = factors[0] if len(factors) == 1 else RelExpr(PRODUCT, children=tuple(factors))
    if scalar is None:
        return body
    return RelExpr(SCALE, children=(body,), scalar=scalar)


def _make_sum(tokens) -> RelExpr:
    items = list(tokens)
    signs: List[int] = []
    children: List[RelExpr] = []
    sign = 1
    for item in items:
        if item in ("+", "-"):
            sign = -1 if item == "-" else 1
        else:
            signs.append(sign)
            children.append(item)
            sign = 1
    if len(children) == 1 and signs[0] == 1:
        return children[0]
    return RelExpr(SUM, children=tuple(children), signs=tuple(signs))


def _make_factor(tokens) -> RelExpr:
    base = tokens[0]
    if len(tokens) == 1:
        return base
    return RelExpr(POWER, children=(base,), exponent=int(tokens[1]))


def _make_ad(tokens) -> RelExpr:
    exponent = int(tokens[2]) if len(tokens) > 2 else 1
    return RelExpr(AD, indices=(int(tokens[0]),), children=(tokens[1],), exponent=exponent)


def build_relation_grammar() -> pp.ParserElement:
    """Build a fresh parser for relation expressions."""
    scalar = build_scalar_grammar().product
    expr = pp.Forward()
    integer = pp.Regex(r"\d+")
    lpar, rpar = pp.Suppress("("), pp.Suppress(")")
    generator = (
        pp.Keyword("x").suppress() + lpar + pp.DelimitedList(integer) + rpar
    ).set_parse_action(lambda t: RelExpr(GEN, indices=tuple(int(i) for i in t)))
    bracket = (
        pp.Suppress("[") + expr + pp.Suppress(",") + expr + pp.Suppress("]")
    ).set_parse_action(lambda t: RelExpr(COMMUTATOR, children=(t[0], t[1])))
    adjoint = (
        pp.Keyword("ad").suppress()
        + lpar
        + integer
        + pp.Suppress(";")
        + expr
        + rpar
        + pp.Optional(pp.Suppress("^") + integer)
    ).set_parse_action(_make_ad)
    group = lpar + expr + rpar
    base = _located(generator) | _located(bracket) | _located(adjoint) | group
    factor = (base + pp.Optional(pp.Suppress("^") + integer)).set_parse_action(_make_factor)
    term = (
        pp.Optional(scalar + pp.Optional(pp.Suppress("*")))
        + factor
        + pp.ZeroOrMore(pp.Optional(pp.Suppress("*")) + factor)
    ).set_parse_action(_make_term)
    expr <<= _located(
        (
            pp.Optional(pp.one_of("+ -"))
            + term
            + pp.ZeroOrMore(pp.one_of("+ -") + term)
        ).set_parse_action(_make_sum)
    )
    return expr


_RELATION_PARSER = build_relation_grammar()


def parse_rel_expr(text: str) -> RelExpr:
    """Parse DSL text.

    Raises:
        RelationSyntaxError: With the offset, line and column of the failure
    """
    try:
        return _RELATION_PARSER.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        message = f"invalid relation expression: {exc.msg}"
        raise RelationSyntaxError(message, text, exc.loc) from None


def eval_rel_expr(
    expr: RelExpr,
    algebra: FreeAlgebra,
    params: Optional[Mapping[str, Scalar]] = None,
) -> FreeElement:
    """Evaluate a relation expression in T(V).

    Args:
        expr: Parsed expression
        algebra: Free algebra of the target braiding
        params: Named scalar parameters

    Returns:
        The element of T(V)

    Raises:
        IllFormedRelationError: On out-of-range indices or non-homogeneous
            commutator operands, with the span of the offending node
        InvalidOperandError: On unbound scalar names
    """
    kind = expr.kind
    if kind in (GEN, AD):
        for index in expr.indices:
            if not 1 <= index <= algebra.theta:
                raise IllFormedRelationError(
                    f"index {index} out of range 1..{algebra.theta}", expr.span
                )
    if kind == GEN:
        return algebra.iterated_adjoint(expr.indices)
    if kind == SCALE:
        coefficient = algebra.field.evaluate(
            expr.scalar, params, algebra.braiding.entry  # type: ignore[arg-type]
        )
        return eval_rel_expr(expr.children[0], algebra, params).scale(coefficient)
    values = [eval_rel_expr(child, algebra, params) for child in expr.children]
    if kind == SUM:
        result = algebra.zero()
        for sign, value in zip(expr.signs, values):
            result = result + value if sign > 0 else result - value
        return result
    if kind == PRODUCT:
        result = values[0]
        for value in values[1:]:
            result = result * value
        return result
    if kind == POWER:
        return values[0] ** expr.exponent
    try:
        if kind == COMMUTATOR:
            return algebra.braided_commutator(values[0], values[1])
        if kind == AD:
            return algebra.ad_power(expr.indices[0], values[0], expr.exponent)
    except NonHomogeneousError as exc:
        raise IllFormedRelationError(str(exc), expr.span) from None
    raise InvalidOperandError(f"unknown relation node '{kind}'")


def evaluate_text(
    text: str, algebra: FreeAlgebra, params: Optional[Mapping[str, Scalar]] = None
) -> FreeElement:
    """Parse and evaluate in one step."""
    return eval_rel_expr(parse_rel_expr(text), algebra, params)
