"""Schur polynomials in Chern variables and their twisted / derived variants.

s_lambda = det[c_{lambda_j - j + k}] over the l(lambda) x l(lambda) Jacobi-Trudi
matrix, with c_0 = 1 and c_i = 0 for i outside [0, r]. Trailing zero parts
only add a unitriangular block, so the determinant is unchanged.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any, Callable, Dict, List, Optional, Sequence

from .chern_ring import ChernPoly, TwistSeries, to_rational
from .errors import InvalidPartitionError, NonHomogeneousError
from .partitions import Partition, as_partition, partition_conjugate, partition_enumerate, semistandard_tableaux

logger = logging.getLogger(__name__)


def determinant(matrix: Sequence[Sequence[Any]], one: Any) -> Any:
    """Exact determinant over a commutative ring by Laplace expansion on column subsets.

    Entries must support ``+``, ``*``, negation and ``is_zero()``. Each row
    is expanded against the set of still-unused columns, so the cost is
    O(2^m m) ring products rather than m!.
    """
    size = len(matrix)
    if size == 0:
        return one
    # partial[mask] = signed sum over injections of the first popcount(mask) rows into mask
    partial: Dict[int, Any] = {0: one}
    for row in range(size):
        advanced: Dict[int, Any] = {}
        for mask, value in partial.items():
            for col in range(size):
                if mask & (1 << col):
                    continue
                entry = matrix[row][col]
                if entry.is_zero():
                    continue
                # sign of placing this column after the already used ones
                inversions = bin(mask >> (col + 1)).count('1')
                term = value * entry
                if inversions % 2:
                    term = -term
                key = mask | (1 << col)
                advanced[key] = term if key not in advanced else advanced[key] + term
        partial = advanced
    full = (1 << size) - 1
    return partial.get(full, one * Fraction(0))


def _jacobi_trudi(partition: Partition, entry: Callable[[int], Any]) -> List[List[Any]]:
    length = partition.length
    return [
        [entry(partition[j] - j + k) for k in range(length)]
        for j in range(length)
    ]


@lru_cache(maxsize=None)
def _schur_poly_cached(parts: tuple, r: int) -> ChernPoly:
    partition = Partition(parts)
    matrix = _jacobi_trudi(partition, lambda i: ChernPoly.chern(i, r))
    return determinant(matrix, ChernPoly.constant(1, r))


def schur_poly(partition: Sequence[int], r: int) -> ChernPoly:
    """Schur polynomial s_lambda(c_1, ..., c_r).

    Raises:
        InvalidPartitionError: if a part exceeds the rank
    """
    partition = as_partition(partition).check_rank(r)
    return _schur_poly_cached(partition.parts, r)


def schur_decompose(poly: ChernPoly) -> Dict[Partition, Fraction]:
    """Coefficients a_lambda with poly = sum a_lambda s_lambda.

    The monomial c_mu only occurs in s_lambda for lambda dominated by mu, so
    walking the basis in increasing lexicographic order reads off each
    coefficient directly (unitriangular elimination, no pivoting).

    Raises:
        NonHomogeneousError: for polynomials mixing weighted degrees
    """
    if not poly.is_homogeneous():
        raise NonHomogeneousError(
            f"Schur decomposition needs a homogeneous polynomial, got degrees {poly.degrees()}"
        )
    if poly.is_zero():
        return {}
    k = poly.homogeneous_degree()
    r = poly.rank
    basis = partition_enumerate(k, r)
    remainder = poly
    coefficients: Dict[Partition, Fraction] = {}
    for partition in reversed(basis):
        exponents = [0] * r
        for part in partition:
            exponents[part - 1] += 1
        coeff = remainder.coefficient(exponents)
        if coeff != 0:
            coefficients[partition] = coeff
            remainder = remainder - schur_poly(partition, r).scale(coeff)
    if not remainder.is_zero():
        raise ArithmeticError(f"Schur elimination left a remainder {remainder}")
    return {p: coefficients[p] for p in basis if p in coefficients}


def is_numerically_positive(poly: ChernPoly) -> bool:
    """Fulton-Lazarsfeld test: non-zero with all Schur coefficients >= 0."""
    coefficients = schur_decompose(poly)
    if not coefficients:
        return False
    return all(value >= 0 for value in coefficients.values())


def twisted_chern(k: int, r: int) -> TwistSeries:
    """c_k(E<delta>) = sum_i binom(r - i, k - i) c_i delta^(k - i); zero for k outside [0, r]."""
    if k < 0 or k > r:
        return TwistSeries(r)
    return TwistSeries(r, {
        k - i: ChernPoly.chern(i, r).scale(comb(r - i, k - i))
        for i in range(k + 1)
    })


@lru_cache(maxsize=None)
def _twisted_schur_cached(parts: tuple, r: int) -> TwistSeries:
    partition = Partition(parts)
    matrix = _jacobi_trudi(partition, lambda i: twisted_chern(i, r))
    return determinant(matrix, TwistSeries.constant(1, r))


def twisted_schur(partition: Sequence[int], r: int) -> TwistSeries:
    """s_lambda(E<delta>) expanded in powers of delta."""
    partition = as_partition(partition).check_rank(r)
    return _twisted_schur_cached(partition.parts, r)


def derived_schur(partition: Sequence[int], i: int, r: int) -> ChernPoly:
    """The derived Schur class s_lambda^(i): the delta^i coefficient of s_lambda(E<delta>)."""
    partition = as_partition(partition)
    if i < 0:
        raise ValueError(f"Derived index must be non-negative, got {i}")
    if i > partition.weight:
        return ChernPoly.zero(r)
    return twisted_schur(partition, r).coefficient(i)


def derived_twist_identity_check(
    partition: Sequence[int],
    r: int,
    i: Optional[int] = None,
    delta_scale: Any = 1
) -> bool:
    """Verify s^(i)(E<delta>) = sum_{k >= i} binom(k, i) s^(k)(E) delta^(k - i).

    The left side twists twice: the derived class is itself evaluated at the
    twisted Chern classes c_j(E<q*delta>), q = ``delta_scale``.

    Args:
        partition: lambda in Lambda(|lambda|, r)
        r: Rank
        i: A single derived index, or None for every 0 <= i <= |lambda|
        delta_scale: Rational q substituted as delta -> q * delta

    Returns:
        True when the identity holds exactly for every requested index
    """
    partition = as_partition(partition).check_rank(r)
    scale = to_rational(delta_scale)
    one = TwistSeries.constant(1, r)
    delta = TwistSeries.delta(r) * scale
    twisted_values = [_scale_delta(twisted_chern(j, r), scale) for j in range(1, r + 1)]
    indices = range(partition.weight + 1) if i is None else [i]
    for index in indices:
        lhs = derived_schur(partition, index, r).evaluate(twisted_values, one)
        rhs = TwistSeries(r)
        delta_power = one
        for k in range(index, partition.weight + 1):
            rhs = rhs + TwistSeries.from_poly(derived_schur(partition, k, r)) * delta_power * comb(k, index)
            delta_power = delta_power * delta
        if lhs != rhs:
            logger.debug(f"Derived twist identity fails for {partition}, r={r}, i={index}")
            return False
    return True


def _scale_delta(series: TwistSeries, scale: Fraction) -> TwistSeries:
    return TwistSeries(series.rank, {
        power: poly.scale(scale ** power) for power, poly in series
    })


def segre_poly(k: int, r: int) -> ChernPoly:
    """Degree-k part of 1 / (1 - c_1 + c_2 - ... + (-1)^r c_r)."""
    if k < 0:
        raise ValueError(f"Segre degree must be non-negative, got {k}")
    series = [ChernPoly.constant(1, r)]
    for m in range(1, k + 1):
        term = ChernPoly.zero(r)
        for i in range(1, min(m, r) + 1):
            sign = 1 if i % 2 == 1 else -1
            term = term + (ChernPoly.chern(i, r) * series[m - i]).scale(sign)
        series.append(term)
    return series[k]


def schur_two_row_formula(n: int, j: int, r: int) -> ChernPoly:
    """Closed forms s_(n) = c_n and s_(n-j, j) = c_j c_{n-j} - c_{j-1} c_{n+1-j}."""
    if j == 0:
        return ChernPoly.chern(n, r)
    if j > n - j:
        raise InvalidPartitionError(f"({n - j},{j}) is not a partition")
    def c(i: int) -> ChernPoly:
        return ChernPoly.chern(i, r)

    return c(j) * c(n - j) - c(j - 1) * c(n + 1 - j)


def derived_positivity_experiment(partition: Sequence[int], i: int, r: int) -> Dict[str, Any]:
    """Schur expansion of s_lambda^(i), reported without any expected sign pattern."""
    poly = derived_schur(partition, i, r)
    coefficients = schur_decompose(poly)
    return {
        'lambda': as_partition(partition).to_list(),
        'i': i,
        'rank': r,
        'poly': poly.to_json(),
        'schur_coefficients': {str(p): str(c) for p, c in coefficients.items()},
        'numerically_positive': bool(coefficients) and all(c >= 0 for c in coefficients.values()),
    }


def elementary_symmetric(values: Sequence[Any]) -> List[Fraction]:
    """[e_1, ..., e_r] of the given values."""
    e = [Fraction(1)] + [Fraction(0)] * len(values)
    for value in values:
        value = to_rational(value)
        for k in range(len(values), 0, -1):
            e[k] += e[k - 1] * value
    return e[1:]


def schur_at_roots_oracle(partition: Sequence[int], values: Sequence[Any]) -> Fraction:
    """Sum over SSYT of the conjugate shape with entries <= len(values) of prod x_entry.

    Independent of the Jacobi-Trudi expansion: equals schur_poly(lambda, r)
    with c_i = e_i(values).
    """
    values = [to_rational(v) for v in values]
    shape = partition_conjugate(as_partition(partition))
    total = Fraction(0)
    for tableau in semistandard_tableaux(shape, len(values)):
        term = Fraction(1)
        for row in tableau:
            for entry in row:
                term *= values[entry - 1]
        total += term
    return total


def schur_shifted_roots_oracle(partition: Sequence[int], values: Sequence[Any], delta: Any) -> Fraction:
    """s_lambda evaluated at the shifted roots x_1 + delta, ..., x_r + delta."""
    delta = to_rational(delta)
    return schur_at_roots_oracle(partition, [to_rational(v) + delta for v in values])

