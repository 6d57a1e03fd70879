"""Constant-coefficient (p,q)-forms on C^n.

A form is stored as {(I, J): a_IJ} over strictly increasing 0-based index
tuples, meaning sum a_IJ dz_I ^ dzbar_J with dz_I = dz_i1 ^ ... ^ dz_ip
written before all the dzbar factors. Coefficients are either Python
complex numbers or exact GaussianRationals; JSON uses 1-based indices.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from algebra.chern_ring import to_rational
from algebra.errors import FormError

from .gaussian import GaussianRational, Scalar, is_exact

logger = logging.getLogger(__name__)

Index = Tuple[int, ...]

I_UNIT = GaussianRational(Fraction(0), Fraction(1))


def permutation_sign(sequence: Sequence[int]) -> int:
    """Sign of the sorting permutation; 0 on repeated entries."""
    if len(set(sequence)) != len(sequence):
        return 0
    sign = 1
    items = list(sequence)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


def _is_zero(value: Scalar) -> bool:
    return value == 0


def _scale(value: Scalar, factor: Any) -> Scalar:
    if isinstance(value, GaussianRational) and isinstance(factor, (int, Fraction, GaussianRational)):
        return value * factor
    if isinstance(factor, Fraction):
        factor = float(factor)
    return complex(value) * complex(factor)


class ConstForm:
    """A (p,q)-form with constant coefficients on C^n."""

    __slots__ = ('n', 'p', 'q', '_coefficients')

    def __init__(self, n: int, p: int, q: int, coefficients: Optional[Mapping[Tuple[Index, Index], Any]] = None):
        if not (0 <= p <= n and 0 <= q <= n):
            raise FormError(f"Bidegree ({p},{q}) is out of range for n={n}")
        self.n = n
        self.p = p
        self.q = q
        self._coefficients: Dict[Tuple[Index, Index], Scalar] = {}
        for (left, right), value in (coefficients or {}).items():
            left, right = tuple(left), tuple(right)
            if len(left) != p or len(right) != q:
                raise FormError(f"Index ({left}, {right}) does not match bidegree ({p},{q})")
            if list(left) != sorted(set(left)) or list(right) != sorted(set(right)):
                raise FormError(f"Index ({left}, {right}) is not strictly increasing")
            if any(i < 0 or i >= n for i in left + right):
                raise FormError(f"Index ({left}, {right}) out of range for n={n}")
            if isinstance(value, (int, Fraction)):
                value = GaussianRational.of(value)
            if not _is_zero(value):
                self._coefficients[(left, right)] = value

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n: int, p: int = 0, q: int = 0) -> 'ConstForm':
        return cls(n, p, q)

    @classmethod
    def unit(cls, n: int, exact: bool = True) -> 'ConstForm':
        return cls(n, 0, 0, {((), ()): GaussianRational.of(1) if exact else 1 + 0j})

    @classmethod
    def dz_dzbar(cls, n: int, j: int, k: int, coefficient: Any = None) -> 'ConstForm':
        """coefficient * dz_j ^ dzbar_k (default coefficient i)."""
        return cls(n, 1, 1, {((j,), (k,)): I_UNIT if coefficient is None else coefficient})

    @classmethod
    def dvol(cls, n: int) -> 'ConstForm':
        """(i dz_1 ^ dzbar_1) ^ ... ^ (i dz_n ^ dzbar_n)."""
        full = tuple(range(n))
        return cls(n, n, n, {(full, full): volume_factor(n)})

    # -- inspection -------------------------------------------------------

    @property
    def bidegree(self) -> Tuple[int, int]:
        return self.p, self.q

    @property
    def exact(self) -> bool:
        return all(isinstance(v, GaussianRational) for v in self._coefficients.values())

    def items(self) -> List[Tuple[Tuple[Index, Index], Scalar]]:
        return sorted(self._coefficients.items())

    def coefficient(self, left: Iterable[int], right: Iterable[int]) -> Scalar:
        """Coefficient on dz_left ^ dzbar_right for any ordering of the indices."""
        left, right = list(left), list(right)
        sign = permutation_sign(left) * permutation_sign(right)
        if sign == 0:
            return 0
        value = self._coefficients.get((tuple(sorted(left)), tuple(sorted(right))), 0)
        return value if sign > 0 else -value

    def is_zero(self, tolerance: float = 0.0) -> bool:
        if tolerance == 0.0:
            return not self._coefficients
        return all(abs(complex(v)) <= tolerance for v in self._coefficients.values())

    def max_abs(self) -> float:
        return max((abs(complex(v)) for v in self._coefficients.values()), default=0.0)

    def to_complex(self) -> 'ConstForm':
        return ConstForm(self.n, self.p, self.q, {k: complex(v) for k, v in self._coefficients.items()})

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: 'ConstForm'):
        if other.n != self.n:
            raise FormError(f"Forms live on C^{self.n} and C^{other.n}")

    def __add__(self, other: Any) -> 'ConstForm':
        if isinstance(other, (int, Fraction)):
            other = ConstForm.unit(self.n) * other
        if not isinstance(other, ConstForm):
            return NotImplemented
        self._check(other)
        if other.bidegree != self.bidegree:
            # the zero form of any bidegree is the additive identity
            if other.is_zero():
                return self
            if self.is_zero():
                return other
            raise FormError(f"Cannot add forms of bidegree {self.bidegree} and {other.bidegree}")
        merged: Dict[Tuple[Index, Index], Scalar] = dict(self._coefficients)
        for key, value in other._coefficients.items():
            merged[key] = merged[key] + value if key in merged else value
        return ConstForm(self.n, self.p, self.q, merged)

    __radd__ = __add__

    def __neg__(self) -> 'ConstForm':
        return ConstForm(self.n, self.p, self.q, {k: -v for k, v in self._coefficients.items()})

    def __sub__(self, other: Any) -> 'ConstForm':
        return self + (-other)

    def __rsub__(self, other: Any) -> 'ConstForm':
        return (-self) + other

    def scale(self, factor: Any) -> 'ConstForm':
        return ConstForm(self.n, self.p, self.q, {k: _scale(v, factor) for k, v in self._coefficients.items()})

    def __mul__(self, other: Any) -> 'ConstForm':
        if isinstance(other, ConstForm):
            return wedge(self, other)
        if isinstance(other, (int, Fraction, complex, float, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: Any) -> 'ConstForm':
        if isinstance(other, (int, Fraction, complex, float, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def conjugate(self) -> 'ConstForm':
        """Complex conjugate; conj(dz_I ^ dzbar_J) = (-1)^{pq} dz_J ^ dzbar_I."""
        sign = -1 if (self.p * self.q) % 2 else 1
        return ConstForm(self.n, self.q, self.p, {
            (right, left): (value.conjugate() if sign > 0 else -value.conjugate())
            for (left, right), value in self._coefficients.items()
        })

    def is_real(self, tolerance: float = 1e-10) -> bool:
        if self.p != self.q:
            return False
        difference = self - self.conjugate()
        if self.exact:
            return difference.is_zero()
        return difference.max_abs() <= tolerance * max(1.0, self.max_abs())

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, ConstForm):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.n == other.n
        return self.n == other.n and self.bidegree == other.bidegree and self._coefficients == other._coefficients

    def __hash__(self) -> int:
        return hash((self.n, self.p, self.q, frozenset(self._coefficients.items())))

    def __repr__(self) -> str:
        return f"ConstForm(n={self.n}, ({self.p},{self.q}), {len(self._coefficients)} terms)"

    # -- serialization ----------------------------------------------------

    def to_json(self) -> Dict[str, Any]:
        terms = []
        for (left, right), value in self.items():
            if isinstance(value, GaussianRational):
                re, im = _json_rational(value.re), _json_rational(value.im)
            else:
                re, im = complex(value).real, complex(value).imag
            terms.append([[i + 1 for i in left], [j + 1 for j in right], re, im])
        return {'n': self.n, 'p': self.p, 'q': self.q, 'terms': terms}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> 'ConstForm':
        """Inverse of to_json; integer or ``"p/q"`` parts give an exact form, floats a complex one."""
        n = int(data['n'])
        terms = data.get('terms', [])
        if terms:
            p, q = len(terms[0][0]), len(terms[0][1])
        else:
            p, q = 0, 0
        p = int(data.get('p', p))
        q = int(data.get('q', q))
        exact = all(not isinstance(part, float) for term in terms for part in term[2:4])
        coefficients: Dict[Tuple[Index, Index], Scalar] = {}
        for term in terms:
            if len(term) != 4:
                raise FormError(f"Form term must be [I, J, re, im], got {term!r}")
            left_raw, right_raw, re, im = term
            left = [i - 1 for i in left_raw]
            right = [j - 1 for j in right_raw]
            sign = permutation_sign(left) * permutation_sign(right)
            if sign == 0:
                continue
            if exact:
                value: Scalar = GaussianRational(to_rational(re), to_rational(im))
            else:
                value = complex(float(re), float(im))
            key = (tuple(sorted(left)), tuple(sorted(right)))
            value = value if sign > 0 else -value
            coefficients[key] = coefficients[key] + value if key in coefficients else value
        return cls(n, p, q, coefficients)


def _json_rational(value: Fraction) -> Any:
    return value.numerator if value.denominator == 1 else str(value)


def _complement(n: int, index: Index) -> Index:
    return tuple(i for i in range(n) if i not in index)


def wedge(a: ConstForm, b: ConstForm) -> ConstForm:
    """Exterior product; zero when the bidegree would exceed (n, n)."""
    a._check(b)
    p, q = a.p + b.p, a.q + b.q
    if p > a.n or q > a.n:
        return ConstForm.zero(a.n, min(p, a.n), min(q, a.n))
    result: Dict[Tuple[Index, Index], Scalar] = {}
    # moving dz_K past dzbar_J costs (-1)^{|J||K|}
    cross = -1 if (a.q * b.p) % 2 else 1
    for (i_left, j_left), x in a._coefficients.items():
        for (i_right, j_right), y in b._coefficients.items():
            left = i_left + i_right
            right = j_left + j_right
            sign = cross * permutation_sign(left) * permutation_sign(right)
            if sign == 0:
                continue
            key = (tuple(sorted(left)), tuple(sorted(right)))
            value = x * y if sign > 0 else -(x * y)
            result[key] = result[key] + value if key in result else value
    return ConstForm(a.n, p, q, result)


def volume_factor(n: int) -> GaussianRational:
    """Coefficient of dvol on dz_{1..n} ^ dzbar_{1..n}: i^n (-1)^{n(n-1)/2}."""
    value = GaussianRational.of(1)
    for _ in range(n):
        value = value * I_UNIT
    return value if (n * (n - 1) // 2) % 2 == 0 else -value


def top_coefficient(form: ConstForm) -> Scalar:
    """The multiplier u / dvol of an (n, n)-form."""
    if form.bidegree != (form.n, form.n):
        if form.is_zero():
            return 0
        raise FormError(f"Expected an (n,n)-form, got bidegree {form.bidegree}")
    full = tuple(range(form.n))
    value = form.coefficient(full, full)
    factor = volume_factor(form.n)
    if isinstance(value, GaussianRational):
        return value / factor
    return complex(value) / complex(factor)


def pairing(u: ConstForm, v: ConstForm) -> Scalar:
    """(u ^ v) / dvol for complementary bidegrees."""
    if u.p + v.p != u.n or u.q + v.q != u.n:
        raise FormError(f"Bidegrees {u.bidegree} and {v.bidegree} are not complementary on C^{u.n}")
    return top_coefficient(wedge(u, v))


@lru_cache(maxsize=None)
def _hat_scale(n: int, j: int, k: int) -> GaussianRational:
    rest_j, rest_k = _complement(n, (j,)), _complement(n, (k,))
    trial = ConstForm(n, n - 1, n - 1, {(rest_j, rest_k): GaussianRational.of(1)})
    produced = wedge(ConstForm.dz_dzbar(n, j, k), trial).coefficient(tuple(range(n)), tuple(range(n)))
    return volume_factor(n) / produced


def hat(n: int, j: int, k: int) -> ConstForm:
    """The (n-1, n-1)-form with i dz_j ^ dzbar_k ^ hat(j, k) = dvol."""
    return ConstForm(n, n - 1, n - 1, {(_complement(n, (j,)), _complement(n, (k,))): _hat_scale(n, j, k)})


def decomposable(vectors: Sequence[Sequence[Any]]) -> ConstForm:
    """(i a_1 ^ abar_1) ^ ... ^ (i a_m ^ abar_m) for a_l = sum_j vectors[l][j] dz_j."""
    if not vectors:
        raise FormError("Need at least one vector")
    n = len(vectors[0])
    result = ConstForm.unit(n, exact=all(is_exact(x) for v in vectors for x in v))
    for vector in vectors:
        entries = [GaussianRational.of(x) if is_exact(x) else complex(x) for x in vector]
        factor = ConstForm(n, 1, 1, {
            ((j,), (k,)): I_UNIT * entries[j] * (entries[k].conjugate())
            for j in range(n) for k in range(n)
        })
        result = wedge(result, factor)
    return result


def pullback(form: ConstForm, matrix: Sequence[Sequence[Any]]) -> ConstForm:
    """Pull back along the linear map z = M w, so dz_j = sum_k M[j][k] dw_k."""
    n = form.n
    one_forms = [[matrix[j][k] for k in range(n)] for j in range(n)]
    result = ConstForm.zero(n, form.p, form.q)
    for (left, right), value in form.items():
        term = ConstForm.unit(n, exact=form.exact) * value
        for j in left:
            term = wedge(term, ConstForm(n, 1, 0, {((k,), ()): one_forms[j][k] for k in range(n)}))
        for j in right:
            term = wedge(term, ConstForm(n, 0, 1, {((), (k,)): _conj(one_forms[j][k]) for k in range(n)}))
        result = result + term
    return result


def _conj(value: Any) -> Any:
    if isinstance(value, (int, Fraction)):
        return value
    return value.conjugate()
