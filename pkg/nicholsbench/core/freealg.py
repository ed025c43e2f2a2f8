"""The free algebra T(V) of a diagonal braiding and its braided coproduct."""
import logging
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

from nicholsbench.core.braiding import BraidingMatrix, MultiDegree, bicharacter, simple_root
from nicholsbench.core.coeff import GroundField, Scalar, ScalarLike
from nicholsbench.core.errors import (
    CutoffExceededError,
    InvalidOperandError,
    NonHomogeneousError,
)

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
TensorKey = Tuple[Word, ...]


def word_degree(word: Word, theta: int) -> MultiDegree:
    """Letter-count vector of a word."""
    counts = [0] * theta
    for letter in word:
        counts[letter - 1] += 1
    return tuple(counts)


def word_sort_key(word: Word) -> Tuple[int, Word]:
    """Degree-lexicographic order on words."""
    return (len(word), word)


def render_word(word: Word) -> str:
    if not word:
        return "1"
    return "".join(f"x{letter}" for letter in word)


def _render_sum(pieces: Iterable[Tuple[str, Scalar]]) -> str:
    parts = []
    for body, coefficient in pieces:
        if coefficient.is_one:
            text = body
        elif coefficient == -1:
            text = f"-{body}"
        else:
            text = f"({coefficient})*{body}"
        parts.append(text)
    if not parts:
        return "0"
    return " + ".join(parts).replace("+ -", "- ")


class FreeElement:
    """A finite linear combination of words in x_1, ..., x_theta.

    Zero coefficients are never stored. Elements are immutable.
    """

    __slots__ = ("field", "theta", "_terms")

    def __init__(
        self, field: GroundField, theta: int, terms: Optional[Mapping[Word, ScalarLike]] = None
    ):
        clean: Dict[Word, Scalar] = {}
        for word, coefficient in (terms or {}).items():
            word = tuple(word)
            for letter in word:
                if not 1 <= letter <= theta:
                    raise InvalidOperandError(f"letter {letter} out of range 1..{theta}")
            value = field(coefficient)
            if not value.is_zero:
                clean[word] = value
        self.field = field
        self.theta = theta
        self._terms = clean

    @classmethod
    def _from_clean(
        cls, field: GroundField, theta: int, terms: Dict[Word, Scalar]
    ) -> "FreeElement":
        element = cls.__new__(cls)
        element.field = field
        element.theta = theta
        element._terms = terms
        return element

    def _check(self, other: "FreeElement"):
        if other.field != self.field or other.theta != self.theta:
            raise InvalidOperandError("elements belong to different free algebras")

    def terms(self) -> List[Tuple[Word, Scalar]]:
        """Terms in degree-lexicographic order of words."""
        return sorted(self._terms.items(), key=lambda item: word_sort_key(item[0]))

    def words(self) -> List[Word]:
        return sorted(self._terms, key=word_sort_key)

    def coefficient(self, word: Word) -> Scalar:
        return self._terms.get(tuple(word), self.field.zero())

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "FreeElement") -> "FreeElement":
        if not isinstance(other, FreeElement):
            return NotImplemented
        self._check(other)
        terms = dict(self._terms)
        for word, coefficient in other._terms.items():
            value = terms.get(word)
            value = coefficient if value is None else value + coefficient
            if value.is_zero:
                terms.pop(word, None)
            else:
                terms[word] = value
        return FreeElement._from_clean(self.field, self.theta, terms)

    def __neg__(self) -> "FreeElement":
        return FreeElement._from_clean(
            self.field, self.theta, {w: -c for w, c in self._terms.items()}
        )

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: ScalarLike) -> "FreeElement":
        factor = self.field(factor)
        if factor.is_zero:
            return FreeElement._from_clean(self.field, self.theta, {})
        return FreeElement._from_clean(
            self.field, self.theta, {w: c * factor for w, c in self._terms.items()}
        )

    def __mul__(self, other) -> "FreeElement":
        if isinstance(other, FreeElement):
            self._check(other)
            terms: Dict[Word, Scalar] = {}
            for u, a in self._terms.items():
                for v, b in other._terms.items():
                    word = u + v
                    value = a * b
                    if word in terms:
                        value = terms[word] + value
                    if value.is_zero:
                        terms.pop(word, None)
                    else:
                        terms[word] = value
            return FreeElement._from_clean(self.field, self.theta, terms)
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other) -> "FreeElement":
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "FreeElement":
        if n < 0:
            raise InvalidOperandError("negative powers do not exist in T(V)")
        result = FreeElement._from_clean(self.field, self.theta, {(): self.field.one()})
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreeElement):
            return NotImplemented
        return (
            self.field == other.field
            and self.theta == other.theta
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.theta, frozenset(self._terms.items())))

    def degrees(self) -> List[MultiDegree]:
        found = {word_degree(word, self.theta) for word in self._terms}
        return sorted(found, key=lambda d: (sum(d), d))

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> MultiDegree:
        """Common degree of the words.

        Raises:
            NonHomogeneousError: If the element is zero or not homogeneous
        """
        found = self.degrees()
        if len(found) != 1:
            raise NonHomogeneousError(
                "zero has no degree" if not found else f"element has degrees {found}"
            )
        return found[0]

    @property
    def total_degree(self) -> int:
        return max((len(word) for word in self._terms), default=0)

    def homogeneous_components(self) -> Dict[MultiDegree, "FreeElement"]:
        parts: Dict[MultiDegree, Dict[Word, Scalar]] = {}
        for word, coefficient in self._terms.items():
            parts.setdefault(word_degree(word, self.theta), {})[word] = coefficient
        return {
            degree: FreeElement._from_clean(self.field, self.theta, parts[degree])
            for degree in sorted(parts, key=lambda d: (sum(d), d))
        }

    @property
    def constant_term(self) -> Scalar:
        return self.coefficient(())

    def __str__(self) -> str:
        return _render_sum((render_word(w), c) for w, c in self.terms())

    def __repr__(self) -> str:
        return f"FreeElement({self})"


class TensorElement:
    """A finite linear combination of pure tensors of words with a fixed number of legs."""

    __slots__ = ("field", "theta", "legs", "_terms")

    def __init__(
        self,
        field: GroundField,
        theta: int,
        legs: int = 2,
        terms: Optional[Mapping[TensorKey, ScalarLike]] = None,
    ):
        clean: Dict[TensorKey, Scalar] = {}
        for key, coefficient in (terms or {}).items():
            if len(key) != legs:
                raise InvalidOperandError(f"tensor key {key} does not have {legs} legs")
            value = field(coefficient)
            if not value.is_zero:
                clean[tuple(tuple(word) for word in key)] = value
        self.field = field
        self.theta = theta
        self.legs = legs
        self._terms = clean

    @classmethod
    def _from_clean(
        cls, field: GroundField, theta: int, legs: int, terms: Dict[TensorKey, Scalar]
    ) -> "TensorElement":
        element = cls.__new__(cls)
        element.field = field
        element.theta = theta
        element.legs = legs
        element._terms = terms
        return element

    @classmethod
    def pure(cls, *factors: FreeElement) -> "TensorElement":
        """The tensor product u_1 (x) ... (x) u_k of free elements."""
        if not factors:
            raise InvalidOperandError("a tensor needs at least one leg")
        field, theta = factors[0].field, factors[0].theta
        terms: Dict[TensorKey, Scalar] = {(): field.one()}
        for factor in factors:
            factor._check(factors[0])
            terms = {
                key + (word,): value * coefficient
                for key, value in terms.items()
                for word, coefficient in factor._terms.items()
            }
        return cls._from_clean(field, theta, len(factors), terms)

    def terms(self) -> List[Tuple[TensorKey, Scalar]]:
        return sorted(
            self._terms.items(), key=lambda item: tuple(word_sort_key(w) for w in item[0])
        )

    def coefficient(self, *words: Word) -> Scalar:
        return self._terms.get(tuple(tuple(w) for w in words), self.field.zero())

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def _accumulate(self, terms: Dict[TensorKey, Scalar], key: TensorKey, value: Scalar):
        if key in terms:
            value = terms[key] + value
        if value.is_zero:
            terms.pop(key, None)
        else:
            terms[key] = value

    def __add__(self, other: "TensorElement") -> "TensorElement":
        if not isinstance(other, TensorElement):
            return NotImplemented
        if other.legs != self.legs or other.theta != self.theta or other.field != self.field:
            raise InvalidOperandError("tensors of different shapes cannot be added")
        terms = dict(self._terms)
        for key, value in other._terms.items():
            self._accumulate(terms, key, value)
        return TensorElement._from_clean(self.field, self.theta, self.legs, terms)

    def __neg__(self) -> "TensorElement":
        return TensorElement._from_clean(
            self.field, self.theta, self.legs, {k: -v for k, v in self._terms.items()}
        )

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: ScalarLike) -> "TensorElement":
        factor = self.field(factor)
        terms = {} if factor.is_zero else {k: v * factor for k, v in self._terms.items()}
        return TensorElement._from_clean(self.field, self.theta, self.legs, terms)

    def __rmul__(self, other) -> "TensorElement":
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (
            self.field == other.field
            and self.theta == other.theta
            and self.legs == other.legs
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.theta, self.legs, frozenset(self._terms.items())))

    def map_words(self, leg: int, f: Callable[[Word], FreeElement]) -> "TensorElement":
        """Apply a linear map, given on words, to one leg."""
        terms: Dict[TensorKey, Scalar] = {}
        for key, value in self._terms.items():
            for word, coefficient in f(key[leg]).terms():
                self._accumulate(terms, key[:leg] + (word,) + key[leg + 1 :], value * coefficient)
        return TensorElement._from_clean(self.field, self.theta, self.legs, terms)

    def expand_leg(self, leg: int, f: Callable[[Word], "TensorElement"]) -> "TensorElement":
        """Replace leg ``leg`` by a two-leg tensor, e.g. apply the coproduct there."""
        if not 0 <= leg < self.legs:
            raise InvalidOperandError(f"leg {leg} out of range for {self.legs} legs")
        terms: Dict[TensorKey, Scalar] = {}
        for key, value in self._terms.items():
            image = f(key[leg])
            for pair, coefficient in image._terms.items():
                self._accumulate(terms, key[:leg] + pair + key[leg + 1 :], value * coefficient)
        return TensorElement._from_clean(self.field, self.theta, self.legs + 1, terms)

    def __str__(self) -> str:
        return _render_sum(
            (" (x) ".join(render_word(w) for w in key), c) for key, c in self.terms()
        )

    def __repr__(self) -> str:
        return f"TensorElement({self})"


class FreeAlgebra:
    """T(V) for a diagonal braiding, with the braiding-dependent operations.

    Args:
        braiding: The braiding matrix q
    """

    def __init__(self, braiding: BraidingMatrix):
        self.braiding = braiding
        self.field = braiding.field
        self.theta = braiding.theta
        self._chi: Dict[Tuple[MultiDegree, MultiDegree], Scalar] = {}
        self._coproducts: Dict[Word, TensorElement] = {}

    def chi(self, a: MultiDegree, b: MultiDegree) -> Scalar:
        key = (a, b)
        value = self._chi.get(key)
        if value is None:
            value = bicharacter(self.braiding, a, b)
            self._chi[key] = value
        return value

    def zero(self) -> FreeElement:
        return FreeElement(self.field, self.theta)

    def one(self) -> FreeElement:
        return FreeElement(self.field, self.theta, {(): 1})

    def gen(self, i: int) -> FreeElement:
        if not 1 <= i <= self.theta:
            raise InvalidOperandError(f"generator x_{i} out of range 1..{self.theta}")
        return FreeElement(self.field, self.theta, {(i,): 1})

    def word(self, *letters: int) -> FreeElement:
        return FreeElement(self.field, self.theta, {tuple(letters): 1})

    def element(self, terms: Mapping[Word, ScalarLike]) -> FreeElement:
        return FreeElement(self.field, self.theta, terms)

    def multiply(self, u: FreeElement, v: FreeElement) -> FreeElement:
        return u * v

    def braided_commutator(self, u: FreeElement, v: FreeElement) -> FreeElement:
        """[u, v]_c = uv - chi(deg u, deg v) vu for homogeneous u and v.

        Raises:
            NonHomogeneousError: If u or v is not homogeneous
        """
        if u.is_zero or v.is_zero:
            return self.zero()
        factor = self.chi(u.degree, v.degree)
        return u * v - (v * u).scale(factor)

    def ad_power(self, i: int, v: FreeElement, n: int = 1) -> FreeElement:
        """(ad_c x_i)^n v."""
        if n < 0:
            raise InvalidOperandError("adjoint power must be nonnegative")
        if not v.is_zero and not v.is_homogeneous:
            raise NonHomogeneousError("ad_c needs a homogeneous operand")
        x = self.gen(i)
        for _ in range(n):
            v = self.braided_commutator(x, v)
        return v

    def iterated_adjoint(self, indices: Tuple[int, ...]) -> FreeElement:
        """x_{i1 i2 ... ik} = ad_c x_i1 (ad_c x_i2 (... x_ik))."""
        if not indices:
            raise InvalidOperandError("iterated adjoint needs at least one index")
        result = self.gen(indices[-1])
        for i in reversed(indices[:-1]):
            result = self.braided_commutator(self.gen(i), result)
        return result

    def coproduct_word(self, word: Word) -> TensorElement:
        """Braided shuffle coproduct of a single word."""
        cached = self._coproducts.get(word)
        if cached is not None:
            return cached
        one = self.field.one()
        partial: Dict[Tuple[Word, Word], Scalar] = {((), ()): one}
        zero_degree = (0,) * self.theta
        for letter in word:
            alpha = simple_root(letter, self.theta)
            extended: Dict[Tuple[Word, Word], Scalar] = {}
            for (left, right), value in partial.items():
                right_degree = word_degree(right, self.theta) if right else zero_degree
                # the letter passes every letter already sent right
                moved = value * self.chi(right_degree, alpha)
                for key, coefficient in (((left + (letter,), right), moved),
                                         ((left, right + (letter,)), value)):
                    total = extended.get(key)
                    total = coefficient if total is None else total + coefficient
                    if total.is_zero:
                        extended.pop(key, None)
                    else:
                        extended[key] = total
            partial = extended
        result = TensorElement._from_clean(self.field, self.theta, 2, dict(partial))
        self._coproducts[word] = result
        return result

    def coproduct(self, u: FreeElement, cutoff: Optional[int] = None) -> TensorElement:
        """Delta(u) in the braided tensor square.

        Args:
            u: Element of T(V)
            cutoff: Largest total degree allowed, or None for no bound

        Raises:
            CutoffExceededError: If u has a word longer than ``cutoff``
        """
        if cutoff is not None and u.total_degree > cutoff:
            raise CutoffExceededError(u.total_degree, cutoff)
        result = TensorElement(self.field, self.theta, 2)
        for word, coefficient in u.terms():
            result = result + self.coproduct_word(word).scale(coefficient)
        return result

    def primitive_defect(self, u: FreeElement, cutoff: Optional[int] = None) -> TensorElement:
        """Delta(u) - u (x) 1 - 1 (x) u, zero exactly when u is primitive.

        Raises:
            NonHomogeneousError: If u is not homogeneous or has a constant term
        """
        if not u.is_homogeneous:
            raise NonHomogeneousError("primitivity is tested on homogeneous elements")
        if not u.constant_term.is_zero:
            raise NonHomogeneousError("element has a nonzero constant term")
        one = self.one()
        return (
            self.coproduct(u, cutoff)
            - TensorElement.pure(u, one)
            - TensorElement.pure(one, u)
        )

    def tensor_product(self, a: TensorElement, b: TensorElement) -> TensorElement:
        """Product in the braided tensor square: (w x x)(y x z) = chi(deg x, deg y) wy x xz."""
        if a.legs != 2 or b.legs != 2:
            raise InvalidOperandError("the braided product is defined on two-leg tensors")
        terms: Dict[TensorKey, Scalar] = {}
        for (w, x), p in a._terms.items():
            x_degree = word_degree(x, self.theta)
            for (y, z), r in b._terms.items():
                value = p * r * self.chi(x_degree, word_degree(y, self.theta))
                a._accumulate(terms, (w + y, x + z), value)
        return TensorElement._from_clean(self.field, self.theta, 2, terms)

    def counit(self, u: FreeElement) -> Scalar:
        return u.constant_term
