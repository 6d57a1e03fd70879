"""Weighted-graded polynomial ring Q[c_1, ..., c_r] and its formal twist extension.

The variable c_i has weight i. Coefficients are exact ``Fraction`` values.
Terms are kept in canonical graded-lexicographic order: higher weighted
degree first, then lexicographically larger exponent vectors first.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .errors import NonHomogeneousError, RankMismatchError

logger = logging.getLogger(__name__)

Rational = Fraction


def to_rational(value: Any) -> Fraction:
    """Convert ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip().replace('−', '-'))
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"Not an exact rational: {value!r}")


def format_rational(value: Fraction) -> str:
    return str(value)


@dataclass(frozen=True, order=True)
class ChernMonomial:
    """c_1^{e_1} ... c_r^{e_r}."""
    exponents: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @property
    def weighted_degree(self) -> int:
        return sum((i + 1) * e for i, e in enumerate(self.exponents))

    def __mul__(self, other: 'ChernMonomial') -> 'ChernMonomial':
        return ChernMonomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.weighted_degree, self.exponents)

    def __str__(self) -> str:
        factors = []
        for i, e in enumerate(self.exponents):
            if e == 1:
                factors.append(f"c{i + 1}")
            elif e > 1:
                factors.append(f"c{i + 1}^{e}")
        return "*".join(factors) if factors else "1"


class ChernPoly:
    """Exact polynomial in the Chern variables of a rank-r bundle.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ('rank', '_terms')

    def __init__(self, rank: int, terms: Optional[Mapping[Tuple[int, ...], Any]] = None):
        if rank < 1:
            raise RankMismatchError(f"Rank must be positive, got {rank}")
        self.rank = rank
        cleaned: Dict[Tuple[int, ...], Fraction] = {}
        for exponents, coeff in (terms or {}).items():
            exponents = tuple(exponents)
            if len(exponents) != rank:
                raise RankMismatchError(
                    f"Monomial {exponents} does not have {rank} exponent slots"
                )
            coeff = to_rational(coeff)
            if coeff != 0:
                cleaned[exponents] = cleaned.get(exponents, Fraction(0)) + coeff
                if cleaned[exponents] == 0:
                    del cleaned[exponents]
        self._terms = cleaned

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, rank: int) -> 'ChernPoly':
        return cls(rank)

    @classmethod
    def constant(cls, value: Any, rank: int) -> 'ChernPoly':
        return cls(rank, {(0,) * rank: value})

    @classmethod
    def chern(cls, i: int, rank: int) -> 'ChernPoly':
        """c_i with the convention c_0 = 1 and c_i = 0 outside [0, r]."""
        if i == 0:
            return cls.constant(1, rank)
        if i < 0 or i > rank:
            return cls.zero(rank)
        exponents = [0] * rank
        exponents[i - 1] = 1
        return cls(rank, {tuple(exponents): 1})

    # -- inspection -------------------------------------------------------

    def terms(self) -> List[Tuple[ChernMonomial, Fraction]]:
        """Terms in canonical order."""
        ordered = sorted(
            self._terms.items(),
            key=lambda item: ChernMonomial(item[0]).sort_key(),
            reverse=True,
        )
        return [(ChernMonomial(exponents), coeff) for exponents, coeff in ordered]

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> List[int]:
        return sorted({ChernMonomial(e).weighted_degree for e in self._terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_degree(self) -> int:
        """Weighted degree of a homogeneous polynomial (0 for the zero polynomial)."""
        degrees = self.degrees()
        if len(degrees) > 1:
            raise NonHomogeneousError(
                f"Polynomial {self} mixes weighted degrees {degrees}"
            )
        return degrees[0] if degrees else 0

    def degree_part(self, k: int) -> 'ChernPoly':
        return ChernPoly(self.rank, {
            e: c for e, c in self._terms.items()
            if ChernMonomial(e).weighted_degree == k
        })

    # -- arithmetic -------------------------------------------------------

    def _check_rank(self, other: 'ChernPoly'):
        if self.rank != other.rank:
            raise RankMismatchError(
                f"Rank mismatch: {self.rank} vs {other.rank}"
            )

    def _coerce(self, other: Any) -> Optional['ChernPoly']:
        if isinstance(other, ChernPoly):
            self._check_rank(other)
            return other
        if isinstance(other, (int, Fraction)):
            return ChernPoly.constant(other, self.rank)
        return None

    def __add__(self, other: Any) -> 'ChernPoly':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return ChernPoly(self.rank, terms)

    __radd__ = __add__

    def __neg__(self) -> 'ChernPoly':
        return ChernPoly(self.rank, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Any) -> 'ChernPoly':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> 'ChernPoly':
        return (-self) + other

    def __mul__(self, other: Any) -> 'ChernPoly':
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, ChernPoly):
            return NotImplemented
        self._check_rank(other)
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return ChernPoly(self.rank, terms)

    def __rmul__(self, other: Any) -> 'ChernPoly':
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> 'ChernPoly':
        result = ChernPoly.constant(1, self.rank)
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, factor: Any) -> 'ChernPoly':
        factor = to_rational(factor)
        return ChernPoly(self.rank, {e: c * factor for e, c in self._terms.items()})

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ChernPoly.constant(other, self.rank)
        if not isinstance(other, ChernPoly):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self._terms.items())))

    # -- substitution -----------------------------------------------------

    def evaluate(self, values: Sequence[Any], one: Any) -> Any:
        """Substitute ring elements for c_1..c_r.

        Args:
            values: Elements for c_1, ..., c_r (any commutative ring type
                supporting ``+``, ``*`` and left multiplication by Fraction)
            one: The unit of that ring

        Returns:
            The value of the polynomial in the target ring
        """
        if len(values) != self.rank:
            raise RankMismatchError(
                f"Expected {self.rank} values for c_1..c_{self.rank}, got {len(values)}"
            )
        powers: Dict[Tuple[int, int], Any] = {}

        def power(i: int, e: int) -> Any:
            if (i, e) not in powers:
                powers[(i, e)] = one if e == 0 else power(i, e - 1) * values[i]
            return powers[(i, e)]

        total = None
        for monomial, coeff in self.terms():
            term = one
            for i, e in enumerate(monomial.exponents):
                if e:
                    term = term * power(i, e)
            term = coeff * term
            total = term if total is None else total + term
        return total if total is not None else Fraction(0) * one

    def evaluate_rational(self, values: Sequence[Any]) -> Fraction:
        return self.evaluate([to_rational(v) for v in values], Fraction(1))

    # -- serialization ----------------------------------------------------

    def to_json(self) -> Dict[str, Any]:
        return {
            'rank': self.rank,
            'terms': [
                [list(m.exponents), format_rational(c)] for m, c in self.terms()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> 'ChernPoly':
        rank = int(data['rank'])
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for exponents, coeff in data.get('terms', []):
            key = tuple(int(e) for e in exponents)
            terms[key] = terms.get(key, Fraction(0)) + to_rational(coeff)
        return cls(rank, terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for monomial, coeff in self.terms():
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            body = str(monomial)
            if body == "1":
                body = str(magnitude)
            elif magnitude != 1:
                body = f"{magnitude}*{body}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"ChernPoly(rank={self.rank}, {self})"


class TwistSeries:
    """Polynomial in the formal twist symbol delta with ChernPoly coefficients.

    The coefficient of delta^i of a series of weighted degree k has weighted
    degree k - i.
    """

    __slots__ = ('rank', '_coefficients')

    def __init__(self, rank: int, coefficients: Optional[Mapping[int, ChernPoly]] = None):
        self.rank = rank
        cleaned: Dict[int, ChernPoly] = {}
        for power, poly in (coefficients or {}).items():
            if power < 0:
                raise ValueError(f"Negative delta exponent {power}")
            if poly.rank != rank:
                raise RankMismatchError(f"Rank mismatch: {poly.rank} vs {rank}")
            if not poly.is_zero():
                cleaned[int(power)] = poly
        self._coefficients = cleaned

    @classmethod
    def from_poly(cls, poly: ChernPoly) -> 'TwistSeries':
        return cls(poly.rank, {0: poly})

    @classmethod
    def constant(cls, value: Any, rank: int) -> 'TwistSeries':
        return cls.from_poly(ChernPoly.constant(value, rank))

    @classmethod
    def delta(cls, rank: int) -> 'TwistSeries':
        return cls(rank, {1: ChernPoly.constant(1, rank)})

    def coefficient(self, power: int) -> ChernPoly:
        return self._coefficients.get(power, ChernPoly.zero(self.rank))

    def powers(self) -> List[int]:
        return sorted(self._coefficients)

    def is_zero(self) -> bool:
        return not self._coefficients

    def __iter__(self) -> Iterator[Tuple[int, ChernPoly]]:
        for power in self.powers():
            yield power, self._coefficients[power]

    def __add__(self, other: Any) -> 'TwistSeries':
        if isinstance(other, (int, Fraction)):
            other = TwistSeries.constant(other, self.rank)
        if not isinstance(other, TwistSeries):
            return NotImplemented
        if other.rank != self.rank:
            raise RankMismatchError(f"Rank mismatch: {self.rank} vs {other.rank}")
        coefficients = dict(self._coefficients)
        for power, poly in other._coefficients.items():
            coefficients[power] = coefficients.get(power, ChernPoly.zero(self.rank)) + poly
        return TwistSeries(self.rank, coefficients)

    __radd__ = __add__

    def __neg__(self) -> 'TwistSeries':
        return TwistSeries(self.rank, {p: -c for p, c in self._coefficients.items()})

    def __sub__(self, other: Any) -> 'TwistSeries':
        return self + (-other)

    def __mul__(self, other: Any) -> 'TwistSeries':
        if isinstance(other, (int, Fraction)):
            return TwistSeries(self.rank, {p: c * other for p, c in self._coefficients.items()})
        if not isinstance(other, TwistSeries):
            return NotImplemented
        if other.rank != self.rank:
            raise RankMismatchError(f"Rank mismatch: {self.rank} vs {other.rank}")
        coefficients: Dict[int, ChernPoly] = {}
        for p1, c1 in self._coefficients.items():
            for p2, c2 in other._coefficients.items():
                product = c1 * c2
                coefficients[p1 + p2] = coefficients.get(p1 + p2, ChernPoly.zero(self.rank)) + product
        return TwistSeries(self.rank, coefficients)

    def __rmul__(self, other: Any) -> 'TwistSeries':
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, TwistSeries):
            return NotImplemented
        return self.rank == other.rank and self._coefficients == other._coefficients

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self._coefficients.items())))

    def evaluate(self, values: Sequence[Any], delta: Any, one: Any) -> Any:
        """Substitute ring elements for c_1..c_r and for delta."""
        total = Fraction(0) * one
        delta_power = one
        for power in range(max(self.powers(), default=-1) + 1):
            if power in self._coefficients:
                total = total + self._coefficients[power].evaluate(values, one) * delta_power
            delta_power = delta_power * delta
        return total

    def to_json(self) -> Dict[str, Any]:
        return {
            'rank': self.rank,
            'delta': [
                {'power': power, 'poly': poly.to_json()} for power, poly in self
            ],
        }

    def __str__(self) -> str:
        if not self._coefficients:
            return "0"
        pieces = []
        for power, poly in self:
            suffix = "" if power == 0 else ("*d" if power == 1 else f"*d^{power}")
            pieces.append(f"({poly}){suffix}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"TwistSeries(rank={self.rank}, {self})"


def chern_variables(rank: int) -> List[ChernPoly]:
    """[c_1, ..., c_r] as ChernPolys."""
    return [ChernPoly.chern(i, rank) for i in range(1, rank + 1)]


def sum_polys(polys: Iterable[ChernPoly], rank: int) -> ChernPoly:
    total = ChernPoly.zero(rank)
    for poly in polys:
        total = total + poly
    return total

