"""Exact arithmetic in the coefficient field Q(zeta_M)(t).

Scalars wrap SymPy fraction-field elements over either QQ (M <= 2) or the
cyclotomic number field QQ<zeta_M>. Every result is stored with a monic
denominator, so two scalars are equal exactly when their representations are.
"""
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Mapping, NamedTuple, Optional, Tuple, Union

import pyparsing as pp
from sympy import I, QQ, Dummy, cyclotomic_poly, divisors, exp, ilcm, pi
from sympy.polys.fields import field as fraction_field

from nicholsbench.core.errors import InvalidOperandError, RelationSyntaxError

logger = logging.getLogger(__name__)

RESERVED_NAMES = frozenset({"x", "ad", "z"})
_IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

ScalarLike = Union["Scalar", int, Fraction]
EntryLookup = Callable[[int, int], "Scalar"]


class Scalar:
    """An element of Q(zeta_M)(t).

    Instances are immutable. Arithmetic mixes freely with Python ints and
    Fractions but never with scalars of a different field.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: "GroundField", value):
        self.field = field
        self.value = value

    def _coerce(self, other: ScalarLike):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise InvalidOperandError(
                    f"cannot combine scalars of {self.field} and {other.field}"
                )
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field(other).value
        return None

    def __add__(self, other: ScalarLike) -> "Scalar":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return self.field._wrap(self.value + value)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "Scalar":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return self.field._wrap(self.value - value)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return self.field._wrap(value - self.value)

    def __mul__(self, other: ScalarLike) -> "Scalar":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return self.field._wrap(self.value * value)

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        if not value:
            raise InvalidOperandError("division by zero")
        return self.field._wrap(self.value / value)

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        if not self.value:
            raise InvalidOperandError("division by zero")
        return self.field._wrap(value / self.value)

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, -self.value)

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0 and not self.value:
            raise InvalidOperandError("zero has no inverse")
        return self.field._wrap(self.value ** exponent)

    def inverse(self) -> "Scalar":
        """Multiplicative inverse.

        Raises:
            InvalidOperandError: If the scalar is zero
        """
        return self ** -1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field(other).value
        return NotImplemented

    def __ne__(self, other: object) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __bool__(self) -> bool:
        return bool(self.value)

    @property
    def is_zero(self) -> bool:
        return not self.value

    @property
    def is_one(self) -> bool:
        return self.value == self.field.one().value

    @property
    def is_constant(self) -> bool:
        """True when the scalar does not involve the transcendental."""
        return self.value.numer.is_ground and self.value.denom.is_ground

    @property
    def numerator_degree(self) -> int:
        """Degree in t of the numerator (0 for nonzero constants, -1 for zero)."""
        return max(int(self.value.numer.degree()), -1) if self.value else -1

    @property
    def denominator_degree(self) -> int:
        return int(self.value.denom.degree())

    def __str__(self) -> str:
        return self.field.format(self)

    def __repr__(self) -> str:
        return f"Scalar({self.field.format(self)!r}, M={self.field.M})"


class GroundField:
    """The field Q(zeta_M)(t) with one named transcendental.

    Args:
        M: Cyclotomic order; M=1 and M=2 use plain rationals
        transcendental: Name of the transcendental
    """

    def __init__(self, M: int = 1, transcendental: str = "t"):
        if M < 1:
            raise InvalidOperandError(f"cyclotomic order must be positive, got {M}")
        if not _IDENTIFIER.match(transcendental) or transcendental in RESERVED_NAMES:
            raise InvalidOperandError(f"invalid transcendental name '{transcendental}'")
        self.M = M
        self.transcendental_name = transcendental
        if M <= 2:
            self.domain = QQ
            zeta = QQ(-1) if M == 2 else QQ(1)
        else:
            variable = Dummy("x")
            minimal = cyclotomic_poly(M, variable, polys=True)
            self.domain = QQ.algebraic_field((minimal, exp(2 * I * pi / M)))
            zeta = self.domain.unit
        self._fractions, generator = fraction_field(transcendental, self.domain)
        self._one = Scalar(self, self._fractions.one)
        self._zero = Scalar(self, self._fractions.zero)
        self._zeta = Scalar(self, self._fractions.ground_new(zeta))
        self._t = Scalar(self, generator)
        self._unity_exponent = int(ilcm(2, M))
        logger.debug("Created ground field %s", self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroundField):
            return NotImplemented
        return (self.M, self.transcendental_name) == (other.M, other.transcendental_name)

    def __hash__(self) -> int:
        return hash(("GroundField", self.M, self.transcendental_name))

    def __repr__(self) -> str:
        return f"GroundField(M={self.M}, transcendental='{self.transcendental_name}')"

    def _wrap(self, element) -> Scalar:
        denominator = element.denom
        leading = denominator.LC
        if leading != self.domain.one:
            element = self._fractions.raw_new(
                element.numer.quo_ground(leading), denominator.quo_ground(leading)
            )
        return Scalar(self, element)

    def __call__(self, value: ScalarLike) -> Scalar:
        """Coerce an int, Fraction or Scalar into this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise InvalidOperandError(f"scalar belongs to {value.field}, not {self}")
            return value
        if isinstance(value, Fraction):
            ground = self.domain.convert(QQ(value.numerator, value.denominator))
            return Scalar(self, self._fractions.ground_new(ground))
        if isinstance(value, int):
            return Scalar(self, self._fractions.ground_new(self.domain.convert(value)))
        raise InvalidOperandError(f"cannot coerce {value!r} into {self}")

    def zero(self) -> Scalar:
        return self._zero

    def one(self) -> Scalar:
        return self._one

    def zeta(self) -> Scalar:
        """The primitive M-th root of unity (1 for M=1, -1 for M=2)."""
        return self._zeta

    def transcendental(self) -> Scalar:
        return self._t

    def from_int(self, n: int) -> Scalar:
        return self(n)

    def from_fraction(self, numerator: int, denominator: int) -> Scalar:
        if denominator == 0:
            raise InvalidOperandError("division by zero")
        return self(Fraction(numerator, denominator))

    def is_root_of_unity(self, a: Scalar) -> Optional[int]:
        """Decide whether ``a`` is a root of unity.

        Args:
            a: Nonzero scalar of this field

        Returns:
            The multiplicative order, or None when ``a`` involves the
            transcendental or is a constant of infinite order

        Raises:
            InvalidOperandError: If ``a`` is zero
        """
        a = self(a)
        if a.is_zero:
            raise InvalidOperandError("zero has no multiplicative order")
        if not a.is_constant:
            return None
        if not (a ** self._unity_exponent).is_one:
            return None
        for d in divisors(self._unity_exponent):
            if (a ** int(d)).is_one:
                return int(d)
        return self._unity_exponent

    def parse(
        self,
        text: str,
        params: Optional[Mapping[str, Scalar]] = None,
        entries: Optional[EntryLookup] = None,
    ) -> Scalar:
        """Parse a scalar literal such as ``"1/(z*t)"`` or ``"t^-2 + 3/4"``.

        Args:
            text: Literal text
            params: Named scalar bindings
            entries: Lookup for ``q(i,j)`` references

        Returns:
            The scalar value

        Raises:
            RelationSyntaxError: On malformed text
            InvalidOperandError: On unbound names or division by zero
        """
        return self.evaluate(parse_scalar(text), params, entries)

    def evaluate(
        self,
        node: "ScalarNode",
        params: Optional[Mapping[str, Scalar]] = None,
        entries: Optional[EntryLookup] = None,
    ) -> Scalar:
        """Evaluate a scalar syntax tree in this field."""
        kind = node.kind
        if kind == "int":
            return self(int(node.value))
        if kind == "const":
            return self(node.value)
        if kind == "zeta":
            return self._zeta
        if kind == "name":
            if params and node.value in params:
                return self(params[node.value])
            if node.value == self.transcendental_name:
                return self._t
            raise InvalidOperandError(f"unbound scalar name '{node.value}'")
        if kind == "entry":
            if entries is None:
                raise InvalidOperandError("braiding entries are not available here")
            i, j = node.value
            return entries(i, j)
        if kind == "neg":
            return -self.evaluate(node.children[0], params, entries)
        if kind == "pow":
            base = self.evaluate(node.children[0], params, entries)
            return base ** _integer_value(node.children[1])
        left = self.evaluate(node.children[0], params, entries)
        right = self.evaluate(node.children[1], params, entries)
        if kind == "add":
            return left + right
        if kind == "sub":
            return left - right
        if kind == "mul":
            return left * right
        if kind == "div":
            return left / right
        raise InvalidOperandError(f"unknown scalar node '{kind}'")

    def format(self, a: Scalar) -> str:
        """Render ``a`` as a literal that parses back to the same scalar."""
        numerator = self._format_polynomial(a.value.numer)
        if a.value.denom == self._fractions.ring.one:
            return numerator
        return f"({numerator})/({self._format_polynomial(a.value.denom)})"

    def _zeta_coefficients(self, ground) -> List[Tuple[int, Fraction]]:
        if self.M <= 2:
            coefficients = [ground]
        else:
            coefficients = ground.to_list()
        top = len(coefficients) - 1
        result = []
        for k, coefficient in enumerate(coefficients):
            if coefficient:
                result.append(
                    (top - k, Fraction(int(coefficient.numerator), int(coefficient.denominator)))
                )
        return result

    def _ground_pieces(self, ground) -> List[Tuple[str, str]]:
        pieces = []
        for power, coefficient in self._zeta_coefficients(ground):
            magnitude = abs(coefficient)
            magnitude_text = str(magnitude.numerator)
            if magnitude.denominator != 1:
                magnitude_text += f"/{magnitude.denominator}"
            if power == 0:
                body = magnitude_text
            else:
                base = "z" if power == 1 else f"z^{power}"
                body = base if magnitude == 1 else f"{magnitude_text}*{base}"
            pieces.append(("-" if coefficient < 0 else "+", body))
        return pieces

    def _format_polynomial(self, polynomial) -> str:
        pieces: List[Tuple[str, str]] = []
        name = self.transcendental_name
        for (k,), ground in polynomial.terms():
            ground_pieces = self._ground_pieces(ground)
            if k == 0:
                pieces.extend(ground_pieces)
                continue
            power = name if k == 1 else f"{name}^{k}"
            if len(ground_pieces) == 1:
                sign, body = ground_pieces[0]
                pieces.append((sign, power if body == "1" else f"{body}*{power}"))
            else:
                pieces.append(("+", f"({_join_pieces(ground_pieces)})*{power}"))
        return _join_pieces(pieces)


def _join_pieces(pieces: List[Tuple[str, str]]) -> str:
    if not pieces:
        return "0"
    sign, body = pieces[0]
    text = f"-{body}" if sign == "-" else body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


@lru_cache(maxsize=None)
def ground_field(M: int = 1, transcendental: str = "t") -> GroundField:
    """Shared GroundField instance for ``(M, transcendental)``."""
    return GroundField(M, transcendental)


def is_root_of_unity(a: Scalar) -> Optional[int]:
    """Multiplicative order of ``a``, or None if it is not a root of unity."""
    return a.field.is_root_of_unity(a)


@dataclass(frozen=True)
class ScalarNode:
    """Syntax tree of a scalar literal.

    ``kind`` is one of int, zeta, name, entry, const, neg, add, sub, mul,
    div, pow. Leaves keep their payload in ``value``.
    """

    kind: str
    value: object = None
    children: Tuple["ScalarNode", ...] = ()

    def names(self) -> List[str]:
        """Free names referenced by this tree, in first-use order."""
        found: List[str] = []
        if self.kind == "name":
            found.append(str(self.value))
        for child in self.children:
            for name in child.names():
                if name not in found:
                    found.append(name)
        return found

    def shift_entries(self, offset: int) -> "ScalarNode":
        """Renumber ``q(i,j)`` references by ``offset``."""
        if self.kind == "entry":
            i, j = self.value  # type: ignore[misc]
            return ScalarNode("entry", (i + offset, j + offset))
        if not self.children:
            return self
        return ScalarNode(
            self.kind, self.value, tuple(c.shift_entries(offset) for c in self.children)
        )

    def to_text(self) -> str:
        kind = self.kind
        if kind == "int":
            return str(self.value)
        if kind == "zeta":
            return "z"
        if kind == "name":
            return str(self.value)
        if kind == "entry":
            i, j = self.value  # type: ignore[misc]
            return f"q({i},{j})"
        if kind == "const":
            return f"({self.value})"
        if kind == "neg":
            return f"-{self.children[0]._operand_text()}"
        if kind == "pow":
            return f"{self.children[0]._operand_text()}^{self.children[1]._exponent_text()}"
        symbol = {"add": " + ", "sub": " - ", "mul": "*", "div": "/"}[kind]
        left, right = self.children
        if kind in ("mul", "div"):
            return f"{left._factor_text()}{symbol}{right._operand_text()}"
        right_text = right._factor_text() if kind == "sub" else right.to_text()
        return f"{left.to_text()}{symbol}{right_text}"

    def _operand_text(self) -> str:
        if self.kind in ("int", "zeta", "name", "entry", "const"):
            return self.to_text()
        return f"({self.to_text()})"

    def _factor_text(self) -> str:
        if self.kind in ("add", "sub"):
            return f"({self.to_text()})"
        return self.to_text()

    def _exponent_text(self) -> str:
        if self.kind == "int":
            return str(self.value)
        return f"({self.to_text()})"


def _integer_value(node: ScalarNode) -> int:
    if node.kind == "int":
        return int(node.value)  # type: ignore[arg-type]
    if node.kind == "neg":
        return -_integer_value(node.children[0])
    if node.kind in ("add", "sub", "mul"):
        left = _integer_value(node.children[0])
        right = _integer_value(node.children[1])
        return {"add": left + right, "sub": left - right, "mul": left * right}[node.kind]
    raise InvalidOperandError(f"exponent must be an integer expression, got '{node.to_text()}'")


def _fold_binary(tokens) -> ScalarNode:
    names = {"+": "add", "-": "sub", "*": "mul", "/": "div"}
    items = list(tokens)
    result = items[0]
    for k in range(1, len(items), 2):
        result = ScalarNode(names[items[k]], children=(result, items[k + 1]))
    return result


class ScalarGrammar(NamedTuple):
    """pyparsing elements for scalar literals.

    ``expression`` is a full sum; ``product`` stops at additive operators
    and is what relation expressions use as a coefficient prefix.
    """

    expression: pp.ParserElement
    product: pp.ParserElement


def build_scalar_grammar() -> ScalarGrammar:
    """Build a fresh scalar grammar."""
    expression = pp.Forward()
    integer = pp.Regex(r"\d+").set_parse_action(lambda t: ScalarNode("int", int(t[0])))
    signed = pp.Regex(r"[+-]?\d+").set_parse_action(lambda t: ScalarNode("int", int(t[0])))
    entry = (
        pp.Keyword("q")
        + pp.Suppress("(")
        + pp.Regex(r"\d+")
        + pp.Suppress(",")
        + pp.Regex(r"\d+")
        + pp.Suppress(")")
    ).set_parse_action(lambda t: ScalarNode("entry", (int(t[1]), int(t[2]))))
    name = (~(pp.Keyword("x") | pp.Keyword("ad")) + pp.Regex(r"[A-Za-z_][A-Za-z0-9_]*"))
    name.set_parse_action(
        lambda t: ScalarNode("zeta") if t[0] == "z" else ScalarNode("name", t[0])
    )
    parenthesized = pp.Suppress("(") + expression + pp.Suppress(")")
    atom = integer | entry | name | parenthesized
    exponent = signed | parenthesized
    power = atom + pp.Optional((pp.Literal("**") | pp.Literal("^")).suppress() + exponent)
    power.set_parse_action(
        lambda t: t[0] if len(t) == 1 else ScalarNode("pow", children=(t[0], t[1]))
    )
    factor = pp.Forward()
    negation = (pp.Suppress("-") + factor).set_parse_action(
        lambda t: ScalarNode("neg", children=(t[0],))
    )
    factor <<= negation | power
    product = (factor + pp.ZeroOrMore(pp.one_of("* /") + factor)).set_parse_action(_fold_binary)
    expression <<= (product + pp.ZeroOrMore(pp.one_of("+ -") + product)).set_parse_action(
        _fold_binary
    )
    return ScalarGrammar(expression=expression, product=product)


_SCALAR_PARSER = build_scalar_grammar().expression


def parse_scalar(text: str) -> ScalarNode:
    """Parse scalar literal text into a syntax tree.

    Raises:
        RelationSyntaxError: With the offset of the failure
    """
    try:
        return _SCALAR_PARSER.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        raise RelationSyntaxError(f"invalid scalar literal: {exc.msg}", text, exc.loc) from None


def bind_scalars(
    field: GroundField, bindings: Mapping[str, str], entries: Optional[EntryLookup] = None
) -> Dict[str, Scalar]:
    """Evaluate named scalar bindings in order; later ones may use earlier ones."""
    values: Dict[str, Scalar] = {}
    for name, text in bindings.items():
        if not _IDENTIFIER.match(name) or name in RESERVED_NAMES:
            raise InvalidOperandError(f"invalid parameter name '{name}'")
        values[name] = field.parse(text, values, entries)
    return values
