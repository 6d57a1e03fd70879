"""Vector bundles on catalogue varieties, possibly carrying a formal R-twist.

A BundleModel stores the untwisted total Chern class c(E) = 1 + c_1 + ... + c_r
together with an unevaluated twist class delta. Chern and Schur classes of
E<delta> are produced by substituting c_i(E) and delta into the universal
twisted polynomials of algebra.schur.
"""

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence, Tuple

from algebra.errors import DegreeMismatchError, UnsupportedBundleError
from algebra.partitions import as_partition
from algebra.schur import derived_schur, schur_poly, twisted_chern

from .variety import CohomClass, VarietyModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Summand:
    """One summand of a split bundle (or the tangent bundle of P^n).

    ``degrees`` is the multidegree (a_1, ..., a_m) of O(a_1, ..., a_m); the
    tangent bundle of P^n is recorded with degree 1 and rank n.
    """
    degrees: Tuple[int, ...]
    tangent: bool = False

    def label(self) -> str:
        if self.tangent:
            return "T"
        return "O(" + ",".join(str(d) for d in self.degrees) + ")"


@dataclass(frozen=True, eq=False)
class BundleModel:
    """E<delta> on a VarietyModel.

    Attributes:
        variety: The base variety
        rank: Fiber rank r
        chern: Untwisted Chern classes (c_0 = 1, c_1, ..., c_r); c_k has degree k
        twist: Degree-1 twist class delta (zero class when untwisted)
        summands: Line-bundle / tangent summands when known, else empty
        spec: The DSL text the bundle was parsed from, if any
    """
    variety: VarietyModel
    rank: int
    chern: Tuple[CohomClass, ...]
    twist: CohomClass
    summands: Tuple[Summand, ...] = ()
    spec: Optional[str] = None

    def __post_init__(self):
        if len(self.chern) != self.rank + 1:
            raise DegreeMismatchError(f"Rank {self.rank} bundle needs {self.rank + 1} Chern classes")
        if self.chern[0] != self.variety.unit():
            raise DegreeMismatchError("c_0 must be the unit class")
        for k, cls in enumerate(self.chern):
            if not cls.is_zero() and cls.degree != k:
                raise DegreeMismatchError(f"c_{k} has degree {cls.degree}")
        if not self.twist.is_zero() and self.twist.degree != 1:
            raise DegreeMismatchError(f"Twist must have degree 1, got {self.twist.degree}")

    @property
    def label(self) -> str:
        if self.spec is not None:
            return self.spec
        if self.summands:
            text = "+".join(s.label() for s in self.summands)
        else:
            text = f"E(rank {self.rank})"
        if not self.twist.is_zero():
            text += f"<{self.twist.label()}>"
        return text

    @property
    def is_twisted(self) -> bool:
        return not self.twist.is_zero()

    def chern_raw(self, k: int) -> CohomClass:
        """c_k of the underlying untwisted bundle."""
        if 0 <= k <= self.rank:
            return self.chern[k]
        return self.variety.zero(max(k, 0))

    def twisted(self, delta: CohomClass) -> 'BundleModel':
        """E<delta + delta'>: twists add."""
        twist = self.twist + delta
        if twist.is_zero():
            twist = self.variety.zero(1)
        return replace(self, twist=twist, spec=None)

    def materialize(self) -> 'BundleModel':
        """Untwisted model whose Chern classes are those of E<delta>."""
        if not self.is_twisted:
            return self
        chern = tuple(chern_class(self, k) for k in range(self.rank + 1))
        return BundleModel(self.variety, self.rank, chern, self.variety.zero(1), self.summands, None)

    def twist_by_factor(self) -> List[Fraction]:
        """Coefficients of the twist on each factor generator of a product of projective spaces."""
        self._require_split()
        if not self.is_twisted:
            return [Fraction(0)] * len(self.variety.generators)
        return self.variety.generator_coefficients(self.twist)

    def is_ample(self) -> bool:
        """Split twisted ampleness: every summand degree plus the twist is > 0 on every factor."""
        return self._summand_bounds(strict=True)

    def is_nef(self) -> bool:
        return self._summand_bounds(strict=False)

    def _summand_bounds(self, strict: bool) -> bool:
        twist = self.twist_by_factor()
        for summand in self.summands:
            for degree, shift in zip(summand.degrees, twist):
                value = degree + shift
                if value < 0 or (strict and value == 0):
                    return False
        return True

    def _require_split(self):
        if not self.summands or self.variety.factors is None:
            raise UnsupportedBundleError(
                "Ampleness is only decided for split bundles on products of projective spaces"
            )
        if len(self.variety.factors) != len(self.variety.generators):
            raise UnsupportedBundleError(f"{self.variety.name} is not a product of projective spaces")

    def to_json(self) -> dict:
        return {
            'variety': self.variety.name,
            'bundle': self.label,
            'rank': self.rank,
            'chern': [c.label() for c in self.chern],
            'twist': self.twist.label(),
        }


def line_bundle_chern(variety: VarietyModel, degrees: Sequence[int]) -> CohomClass:
    """c_1(O(a_1, ..., a_m)) = sum a_i g_i."""
    return variety.divisor(list(degrees))


def split_bundle(variety: VarietyModel, summands: Sequence[Summand], spec: Optional[str] = None,
                 twist: Optional[CohomClass] = None) -> BundleModel:
    """Whitney product of the summands' total Chern classes."""
    total: List[CohomClass] = [variety.unit()]
    rank = 0
    for summand in summands:
        if summand.tangent:
            factor = _tangent_total_chern(variety)
        else:
            factor = [variety.unit(), line_bundle_chern(variety, summand.degrees)]
        new_rank = rank + len(factor) - 1
        product: List[CohomClass] = []
        for k in range(new_rank + 1):
            value = variety.zero(k)
            for i in range(max(0, k - len(factor) + 1), min(k, rank) + 1):
                value = value + total[i] * factor[k - i]
            product.append(value)
        total = product
        rank = new_rank
    return BundleModel(
        variety=variety,
        rank=rank,
        chern=tuple(total),
        twist=twist if twist is not None else variety.zero(1),
        summands=tuple(summands),
        spec=spec,
    )


def _tangent_total_chern(variety: VarietyModel) -> List[CohomClass]:
    """(1 + H)^{n+1} truncated at degree n, from the Euler sequence."""
    n = variety.dimension
    h = variety.generator(variety.generators[0])
    return [h ** k * comb(n + 1, k) for k in range(n + 1)]


def tangent_bundle(variety: VarietyModel) -> BundleModel:
    if variety.factors is None or len(variety.factors) != 1:
        raise UnsupportedBundleError(f"Tangent bundle is only modelled on P^n, not on {variety.name}")
    return split_bundle(variety, [Summand((1,), tangent=True)], spec="T")


def chern_class(bundle: BundleModel, k: int) -> CohomClass:
    """c_k(E<delta>), zero outside 0 <= k <= r."""
    variety = bundle.variety
    if k < 0 or k > bundle.rank:
        return variety.zero(max(k, 0))
    if not bundle.is_twisted:
        return bundle.chern_raw(k)
    values = [bundle.chern_raw(i) for i in range(1, bundle.rank + 1)]
    value = twisted_chern(k, bundle.rank).evaluate(values, bundle.twist, variety.unit())
    return value if not value.is_zero() else variety.zero(k)


def chern_classes(bundle: BundleModel) -> List[CohomClass]:
    """[c_1(E<delta>), ..., c_r(E<delta>)]."""
    return [chern_class(bundle, k) for k in range(1, bundle.rank + 1)]


def schur_class(bundle: BundleModel, partition: Sequence[int]) -> CohomClass:
    """s_lambda(E<delta>) in the variety ring."""
    partition = as_partition(partition).check_rank(bundle.rank)
    value = schur_poly(partition, bundle.rank).evaluate(chern_classes(bundle), bundle.variety.unit())
    return value if not value.is_zero() else bundle.variety.zero(partition.weight)


def derived_schur_class(bundle: BundleModel, partition: Sequence[int], i: int) -> CohomClass:
    """s_lambda^(i)(E<delta>), of degree |lambda| - i."""
    partition = as_partition(partition).check_rank(bundle.rank)
    degree = max(partition.weight - i, 0)
    value = derived_schur(partition, i, bundle.rank).evaluate(chern_classes(bundle), bundle.variety.unit())
    return value if not value.is_zero() else bundle.variety.zero(degree)
