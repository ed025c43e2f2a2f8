"""Closed-form multigraded Hilbert series."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Poly, Symbol, symbols
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

from nicholsbench.core.braiding import MultiDegree, degrees_up_to
from nicholsbench.core.errors import InvalidOperandError

logger = logging.getLogger(__name__)

_TRANSFORMATIONS = standard_transformations + (convert_xor, implicit_multiplication)


def series_variables(theta: int) -> Tuple[Symbol, ...]:
    """The variables t1, ..., t_theta."""
    return tuple(symbols(f"t1:{theta + 1}"))


def _monomial(variables: Sequence[Symbol], degree: MultiDegree):
    result = 1
    for variable, exponent in zip(variables, degree):
        result *= variable ** exponent
    return result


@dataclass(frozen=True)
class RationalSeries:
    """numerator / denominator, both integer polynomials in t1, ..., t_theta."""

    theta: int
    numerator: Poly
    denominator: Poly

    def __post_init__(self):
        if self.denominator.is_zero:
            raise InvalidOperandError("denominator is zero")

    @classmethod
    def from_expressions(cls, theta: int, numerator, denominator) -> "RationalSeries":
        variables = series_variables(theta)
        return cls(
            theta,
            Poly(numerator, *variables, domain="ZZ"),
            Poly(denominator, *variables, domain="ZZ"),
        )

    @classmethod
    def from_text(cls, theta: int, numerator: str, denominator: str = "1") -> "RationalSeries":
        """Parse polynomial text such as ``"(1+t1*t2)(1+t2)"``; ``^`` means power."""
        variables = series_variables(theta)
        namespace = {str(v): v for v in variables}
        try:
            top = parse_expr(numerator, local_dict=namespace, transformations=_TRANSFORMATIONS)
            bottom = parse_expr(denominator, local_dict=namespace, transformations=_TRANSFORMATIONS)
        except (SyntaxError, TypeError) as exc:
            raise InvalidOperandError(f"cannot parse series: {exc}") from None
        unknown = (top.free_symbols | bottom.free_symbols) - set(variables)
        if unknown:
            raise InvalidOperandError(f"unknown series variables {sorted(map(str, unknown))}")
        return cls.from_expressions(theta, top, bottom)

    @classmethod
    def from_pbw(
        cls, theta: int, degrees: Sequence[MultiDegree], heights: Sequence[Optional[int]]
    ) -> "RationalSeries":
        """Series counting ordered PBW monomials.

        A generator of degree d contributes 1/(1 - t^d) when unbounded and
        1 + t^d + ... + t^(h d) when its largest exponent is h.
        """
        variables = series_variables(theta)
        numerator = 1
        denominator = 1
        for degree, height in zip(degrees, heights):
            monomial = _monomial(variables, degree)
            if height is None:
                denominator *= 1 - monomial
            else:
                numerator *= sum(monomial ** k for k in range(height + 1))
        return cls.from_expressions(theta, numerator, denominator)

    @classmethod
    def geometric(cls, theta: int, degree: MultiDegree) -> "RationalSeries":
        """1 / (1 - t^degree)."""
        return cls.from_expressions(theta, 1, 1 - _monomial(series_variables(theta), degree))

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        if not isinstance(other, RationalSeries):
            return NotImplemented
        if other.theta != self.theta:
            raise InvalidOperandError("series over different variables; use tensor()")
        return RationalSeries(
            self.theta, self.numerator * other.numerator, self.denominator * other.denominator
        )

    def tensor(self, other: "RationalSeries") -> "RationalSeries":
        """Product over disjoint variable blocks: other's t_i becomes t_(theta + i)."""
        theta = self.theta + other.theta
        variables = series_variables(theta)
        shift = dict(zip(series_variables(other.theta), variables[self.theta :]))
        return RationalSeries.from_expressions(
            theta,
            self.numerator.as_expr()
            * other.numerator.as_expr().subs(shift, simultaneous=True),
            self.denominator.as_expr()
            * other.denominator.as_expr().subs(shift, simultaneous=True),
        )

    @staticmethod
    def _terms(poly: Poly) -> Dict[MultiDegree, Fraction]:
        return {
            tuple(int(e) for e in monomial): Fraction(int(c.p), int(c.q))
            for monomial, c in poly.terms()
        }

    def coefficients(self, D: int) -> Dict[MultiDegree, int]:
        """Power-series coefficients for every degree of total degree at most D.

        Raises:
            InvalidOperandError: If the denominator has zero constant term or a
                coefficient is not an integer
        """
        theta = self.theta
        zero = (0,) * theta
        denominator = self._terms(self.denominator)
        constant = denominator.get(zero)
        if not constant:
            raise InvalidOperandError("denominator has zero constant term")
        numerator = self._terms(self.numerator)
        order = degrees_up_to(theta, D)
        inverse: Dict[MultiDegree, Fraction] = {}
        rest = [(d, c) for d, c in denominator.items() if d != zero]
        for alpha in order:
            total = Fraction(1) if alpha == zero else Fraction(0)
            for d, c in rest:
                beta = tuple(a - b for a, b in zip(alpha, d))
                if min(beta) >= 0:
                    total -= c * inverse[beta]
            inverse[alpha] = total / constant
        result: Dict[MultiDegree, int] = {}
        for alpha in order:
            total = Fraction(0)
            for d, c in numerator.items():
                beta = tuple(a - b for a, b in zip(alpha, d))
                if min(beta, default=0) >= 0:
                    total += c * inverse[beta]
            if total.denominator != 1:
                raise InvalidOperandError(f"coefficient at {alpha} is not an integer: {total}")
            result[alpha] = int(total)
        return result

    def specialize(self) -> Tuple[Poly, Poly]:
        """Numerator and denominator with every t_i replaced by one variable t."""
        t = Symbol("t")
        substitution = {v: t for v in series_variables(self.theta)}
        return (
            Poly(self.numerator.as_expr().subs(substitution), t, domain="ZZ"),
            Poly(self.denominator.as_expr().subs(substitution), t, domain="ZZ"),
        )

    def to_text(self) -> Tuple[str, str]:
        return (
            str(self.numerator.as_expr()).replace("**", "^"),
            str(self.denominator.as_expr()).replace("**", "^"),
        )

    def to_dict(self) -> Dict:
        numerator, denominator = self.to_text()
        return {"theta": self.theta, "numerator": numerator, "denominator": denominator}


def _multiplicity_at_one(poly: Poly) -> int:
    t = poly.gen
    linear = Poly(t - 1, t, domain="ZZ")
    count = 0
    while not poly.is_zero and poly.eval(1) == 0:
        poly = poly.quo(linear)
        count += 1
    return count


def gkdim_pole_order(series: RationalSeries) -> int:
    """Order of the pole at t = 1 after setting every t_i = t.

    Raises:
        InvalidOperandError: If the numerator is zero
    """
    numerator, denominator = series.specialize()
    if numerator.is_zero:
        raise InvalidOperandError("numerator is zero")
    order = _multiplicity_at_one(denominator) - _multiplicity_at_one(numerator)
    return max(order, 0)


def table_product(
    first: Dict[MultiDegree, int], second: Dict[MultiDegree, int], D: int
) -> Dict[MultiDegree, int]:
    """Convolution of two tables over the same variables, truncated at total degree D."""
    theta = len(next(iter(first)))
    result = {alpha: 0 for alpha in degrees_up_to(theta, D)}
    for a, x in first.items():
        if not x:
            continue
        for b, y in second.items():
            if not y:
                continue
            c = tuple(i + j for i, j in zip(a, b))
            if c in result:
                result[c] += x * y
    return result


def table_tensor(
    first: Dict[MultiDegree, int], second: Dict[MultiDegree, int], D: int
) -> Dict[MultiDegree, int]:
    """Table of a tensor product over disjoint variable blocks, truncated at total degree D."""
    result: Dict[MultiDegree, int] = {}
    for a, x in first.items():
        for b, y in second.items():
            if sum(a) + sum(b) <= D:
                result[a + b] = x * y
    theta = len(next(iter(first))) + len(next(iter(second)))
    return {alpha: result.get(alpha, 0) for alpha in degrees_up_to(theta, D)}


def compare_tables(
    expected: Dict[MultiDegree, int], actual: Dict[MultiDegree, int]
) -> List[Tuple[MultiDegree, int, int]]:
    """Degrees where two tables disagree, as (degree, expected, actual), sorted."""
    keys = sorted(set(expected) | set(actual), key=lambda d: (sum(d), d))
    return [
        (key, expected.get(key, 0), actual.get(key, 0))
        for key in keys
        if expected.get(key, 0) != actual.get(key, 0)
    ]
