"""Ray-based positivity checks for Schur classes of bundles on catalogue varieties.

On the catalogue varieties the pseudo-effective cone of divisors is
simplicial and spanned by the stored rays, so a degree-(n-1) class is
positive against every pseudo-effective class exactly when it pairs
positively with each ray. Models without cone data are reported as
not applicable; nothing is certified for non-polyhedral cones.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from algebra.errors import DegreeMismatchError, MissingConeDataError, UnsupportedBundleError
from algebra.inertia import symmetric_inertia
from algebra.partitions import Partition, as_partition
from geometry.bundles import BundleModel, derived_schur_class, schur_class
from geometry.variety import CohomClass, VarietyModel

logger = logging.getLogger(__name__)


class Verdict(Enum):
    """Outcome of a ray check."""
    STRICTLY_POSITIVE = "strictly-positive"
    FAILS = "fails"
    NOT_APPLICABLE = "not-applicable"


def _rational(value: Fraction) -> str:
    return str(value)


def _ampleness(bundle: BundleModel) -> Optional[bool]:
    try:
        return bundle.is_ample()
    except UnsupportedBundleError:
        return None


def _require_codimension(variety: VarietyModel, partition: Partition, codimension: int = 1):
    if partition.weight != variety.dimension - codimension:
        raise DegreeMismatchError(
            f"|lambda| = {partition.weight} but {variety.name} needs |lambda| = {variety.dimension - codimension}"
        )


def _ray_sum(rays) -> CohomClass:
    total = rays[0].cls
    for ray in rays[1:]:
        total = total + ray.cls
    return total


@dataclass
class PositivityReport:
    """Pairings of s_lambda(E) with the pseudo-effective rays.

    The verdict is strictly-positive iff s_lambda(E) is non-zero and every
    pairing is > 0.
    """
    variety: str
    bundle: str
    partition: List[int]
    pairings: Dict[str, Fraction] = field(default_factory=dict)
    verdict: Verdict = Verdict.NOT_APPLICABLE
    failing_ray: Optional[str] = None
    reason: Optional[str] = None
    ample: Optional[bool] = None
    signature: Optional[Tuple[int, int, int]] = None

    @property
    def verdict_label(self) -> str:
        if self.verdict == Verdict.FAILS:
            return f"fails({self.failing_ray})"
        return self.verdict.value

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.STRICTLY_POSITIVE

    def to_json(self) -> Dict[str, Any]:
        data = {
            'variety': self.variety,
            'bundle': self.bundle,
            'lambda': self.partition,
            'pairings': {name: _rational(v) for name, v in self.pairings.items()},
            'verdict': self.verdict_label,
            'signature': list(self.signature) if self.signature is not None else None,
        }
        if self.reason is not None:
            data['reason'] = self.reason
        if self.ample is not None:
            data['ample'] = self.ample
        return data


def check_theorem_A(variety: VarietyModel, bundle: BundleModel, partition: Sequence[int]) -> PositivityReport:
    """Pair s_lambda(E), |lambda| = n - 1, with every pseudo-effective ray.

    Raises:
        DegreeMismatchError: if |lambda| != n - 1
    """
    partition = as_partition(partition).check_rank(bundle.rank)
    _require_codimension(variety, partition)
    report = PositivityReport(
        variety=variety.name,
        bundle=bundle.label,
        partition=partition.to_list(),
        ample=_ampleness(bundle),
    )
    if not variety.has_cone_data:
        report.reason = f"{variety.name} carries no pseudo-effective cone data"
        logger.warning(report.reason)
        return report
    cls = schur_class(bundle, partition)
    if cls.is_zero():
        report.reason = "s_lambda(E) is zero"
        return report
    for ray in variety.pseff_rays:
        report.pairings[ray.name] = (cls * ray.cls).integrate()
    failing = [name for name, value in report.pairings.items() if value <= 0]
    if failing:
        report.verdict = Verdict.FAILS
        report.failing_ray = failing[0]
    else:
        report.verdict = Verdict.STRICTLY_POSITIVE
    logger.debug(f"{variety.name} {bundle.label} {partition}: {report.verdict_label}")
    return report


# -- perturbation -------------------------------------------------------------

def interpolate(values: Sequence[Fraction]) -> List[Fraction]:
    """Coefficients a_0..a_d of the polynomial with p(t) = values[t], t = 0..d."""
    size = len(values)
    rows = [[Fraction(t) ** i for i in range(size)] + [Fraction(values[t])] for t in range(size)]
    for col in range(size):
        pivot = next(row for row in range(col, size) if rows[row][col] != 0)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        rows[col] = [x / lead for x in rows[col]]
        for row in range(size):
            if row != col and rows[row][col] != 0:
                factor = rows[row][col]
                rows[row] = [a - factor * b for a, b in zip(rows[row], rows[col])]
    return [rows[i][size] for i in range(size)]


@dataclass
class PerturbationReport:
    """int s_lambda(E<-t omega>) . L as a polynomial in t, against the derived classes."""
    variety: str
    bundle: str
    partition: List[int]
    coefficients: List[Fraction]
    expected: List[Fraction]
    constant_ok: bool
    linear_ok: bool
    all_orders_ok: bool

    @property
    def passed(self) -> bool:
        return self.constant_ok and self.linear_ok

    def to_json(self) -> Dict[str, Any]:
        return {
            'variety': self.variety,
            'bundle': self.bundle,
            'lambda': self.partition,
            'coefficients': [_rational(c) for c in self.coefficients],
            'expected': [_rational(c) for c in self.expected],
            'constant_ok': self.constant_ok,
            'linear_ok': self.linear_ok,
            'all_orders_ok': self.all_orders_ok,
            'verdict': 'passes' if self.passed else 'fails',
        }


def _check_divisor(cls: CohomClass, label: str):
    if not cls.is_zero() and cls.degree != 1:
        raise DegreeMismatchError(f"{label} must be a divisor class, got degree {cls.degree}")


def _twisted_pairings(bundle: BundleModel, partition: Partition, omega: CohomClass, line: CohomClass,
                      points: Sequence[Fraction]) -> List[Fraction]:
    return [
        (schur_class(bundle.twisted(omega * (-t)), partition) * line).integrate()
        for t in points
    ]


def perturbation_check(
    variety: VarietyModel,
    bundle: BundleModel,
    partition: Sequence[int],
    omega: CohomClass,
    line: CohomClass
) -> PerturbationReport:
    """Expand int s_lambda(E<-t omega>) . L exactly in t.

    The polynomial is interpolated from direct twists at t = 0..|lambda|
    and compared with (-1)^i int s_lambda^(i)(E) . omega^i . L; the
    constant and linear orders are the ones the criterion uses.

    Raises:
        DegreeMismatchError: for |lambda| != n - 1 or non-divisor omega, L
    """
    partition = as_partition(partition).check_rank(bundle.rank)
    _require_codimension(variety, partition)
    _check_divisor(omega, "omega")
    _check_divisor(line, "L")
    if omega.is_zero():
        omega = variety.zero(1)
    degree = partition.weight
    values = _twisted_pairings(bundle, partition, omega, line, [Fraction(t) for t in range(degree + 1)])
    coefficients = interpolate(values)
    expected = []
    for i in range(degree + 1):
        derived = derived_schur_class(bundle, partition, i)
        expected.append((-1) ** i * (derived * omega ** i * line).integrate())
    return PerturbationReport(
        variety=variety.name,
        bundle=bundle.label,
        partition=partition.to_list(),
        coefficients=coefficients,
        expected=expected,
        constant_ok=coefficients[0] == (schur_class(bundle, partition) * line).integrate(),
        linear_ok=len(coefficients) < 2 or coefficients[1] == expected[1],
        all_orders_ok=coefficients == expected,
    )


@dataclass
class MarginReport:
    """Twist range |eps| < bound in which E<delta + eps omega> keeps every ray pairing positive."""
    margin: Fraction
    sensitivity: Fraction
    bound: Fraction
    stable_plus: bool
    stable_minus: bool

    @property
    def passed(self) -> bool:
        return self.stable_plus and self.stable_minus

    def to_json(self) -> Dict[str, Any]:
        return {
            'margin': _rational(self.margin),
            'sensitivity': _rational(self.sensitivity),
            'bound': _rational(self.bound),
            'stable_plus': self.stable_plus,
            'stable_minus': self.stable_minus,
        }


def perturbation_margin(
    variety: VarietyModel,
    bundle: BundleModel,
    partition: Sequence[int],
    omega: Optional[CohomClass] = None
) -> MarginReport:
    """Exact eps bound keeping the strictly-positive verdict under delta -> delta + eps omega.

    For each ray rho, p_rho(eps) = sum_i eps^i int s_lambda^(i)(E) omega^i rho,
    and for |eps| <= 1 it moves by at most |eps| sum_{i>=1} |a_i|. The bound is
    min(1, margin / sensitivity) with margin = min_rho a_0 and sensitivity the
    largest such sum; the verdict is rechecked at eps = +-bound/2.

    Raises:
        MissingConeDataError: without pseudo-effective rays
    """
    partition = as_partition(partition).check_rank(bundle.rank)
    _require_codimension(variety, partition)
    variety.require_cone_data()
    if omega is None:
        omega = _ray_sum(variety.nef_rays)
    margin: Optional[Fraction] = None
    sensitivity = Fraction(0)
    for ray in variety.pseff_rays:
        a0 = (schur_class(bundle, partition) * ray.cls).integrate()
        margin = a0 if margin is None else min(margin, a0)
        moved = sum(
            (abs((derived_schur_class(bundle, partition, i) * omega ** i * ray.cls).integrate())
             for i in range(1, partition.weight + 1)),
            Fraction(0),
        )
        sensitivity = max(sensitivity, moved)
    if margin <= 0:
        bound = Fraction(0)
    elif sensitivity == 0:
        bound = Fraction(1)
    else:
        bound = min(Fraction(1), margin / sensitivity)
    half = bound / 2
    plus = check_theorem_A(variety, bundle.twisted(omega * half), partition).passed if bound > 0 else False
    minus = check_theorem_A(variety, bundle.twisted(omega * (-half)), partition).passed if bound > 0 else False
    return MarginReport(margin=margin, sensitivity=sensitivity, bound=bound, stable_plus=plus, stable_minus=minus)


# -- Hodge index -----------------------------------------------------------------

@dataclass
class HodgeIndexReport:
    """Gram matrix Q_ij = int s_lambda^(1)(E) rho_i rho_j on the ray basis and its inertia."""
    variety: str
    bundle: str
    partition: List[int]
    rays: List[str]
    matrix: List[List[Fraction]]
    signature: Tuple[int, int, int]
    omega_pairings: List[Fraction] = field(default_factory=list)
    diagonal: List[Fraction] = field(default_factory=list)

    @property
    def h11(self) -> int:
        return len(self.rays)

    @property
    def expected_signature(self) -> Tuple[int, int, int]:
        return 1, 0, self.h11 - 1

    @property
    def hodge_index_holds(self) -> bool:
        return self.signature == self.expected_signature

    @property
    def nonnegativity_holds(self) -> bool:
        return all(v >= 0 for v in self.omega_pairings) and all(v >= 0 for v in self.diagonal)

    @property
    def passed(self) -> bool:
        return self.hodge_index_holds

    def to_json(self) -> Dict[str, Any]:
        return {
            'variety': self.variety,
            'bundle': self.bundle,
            'lambda': self.partition,
            'rays': self.rays,
            'matrix': [[_rational(x) for x in row] for row in self.matrix],
            'signature': list(self.signature),
            'expected_signature': list(self.expected_signature),
            'omega_pairings': [_rational(x) for x in self.omega_pairings],
            'diagonal': [_rational(x) for x in self.diagonal],
            'verdict': 'passes' if self.hodge_index_holds else 'fails',
        }


def hodge_index_matrix(variety: VarietyModel, bundle: BundleModel, partition: Sequence[int]) -> HodgeIndexReport:
    """Q(beta, beta') = int s_lambda^(1)(E) . beta . beta' over the ray basis.

    Also records Q(omega, rho) and Q(rho, rho) for the nef rays rho, with
    omega the sum of the nef rays.

    Raises:
        DegreeMismatchError: if |lambda| != n - 1
        MissingConeDataError: without a ray basis
    """
    partition = as_partition(partition).check_rank(bundle.rank)
    _require_codimension(variety, partition)
    variety.require_cone_data()
    derived = derived_schur_class(bundle, partition, 1)
    rays = list(variety.pseff_rays)

    def q(a: CohomClass, b: CohomClass) -> Fraction:
        return (derived * a * b).integrate()

    matrix = [[q(a.cls, b.cls) for b in rays] for a in rays]
    omega = _ray_sum(variety.nef_rays)
    report = HodgeIndexReport(
        variety=variety.name,
        bundle=bundle.label,
        partition=partition.to_list(),
        rays=[ray.name for ray in rays],
        matrix=matrix,
        signature=symmetric_inertia(matrix),
        omega_pairings=[q(omega, ray.cls) for ray in variety.nef_rays],
        diagonal=[q(ray.cls, ray.cls) for ray in variety.nef_rays],
    )
    logger.debug(f"Hodge index {variety.name} {bundle.label} {partition}: signature {report.signature}")
    return report


# -- movable and restriction checks ------------------------------------------------

@dataclass
class RayPairingReport:
    """Pairings of a fixed class with a family of rays against a sign requirement."""
    check: str
    variety: str
    bundle: str
    partition: List[int]
    pairings: Dict[str, Fraction]
    strict: bool
    bundle_nef: Optional[bool] = None
    bundle_ample: Optional[bool] = None
    power: Optional[int] = None

    @property
    def passed(self) -> bool:
        if self.strict:
            return all(v > 0 for v in self.pairings.values())
        return all(v >= 0 for v in self.pairings.values())

    def to_json(self) -> Dict[str, Any]:
        data = {
            'check': self.check,
            'variety': self.variety,
            'bundle': self.bundle,
            'lambda': self.partition,
            'pairings': {name: _rational(v) for name, v in self.pairings.items()},
            'verdict': 'passes' if self.passed else 'fails',
        }
        if self.power is not None:
            data['m'] = self.power
        if self.bundle_nef is not None:
            data['nef'] = self.bundle_nef
        if self.bundle_ample is not None:
            data['ample'] = self.bundle_ample
        return data


def movable_nonnegativity_check(variety: VarietyModel, bundle: BundleModel, partition: Sequence[int]) -> RayPairingReport:
    """int s_lambda(E) . L >= 0 for every nef ray L (movable = nef on the catalogue).

    Raises:
        MissingConeDataError: without nef rays
    """
    partition = as_partition(partition).check_rank(bundle.rank)
    _require_codimension(variety, partition)
    if not variety.nef_rays:
        raise MissingConeDataError(f"{variety.name} carries no nef cone data")
    cls = schur_class(bundle, partition)
    try:
        nef = bundle.is_nef()
    except UnsupportedBundleError:
        nef = None
    return RayPairingReport(
        check='movable',
        variety=variety.name,
        bundle=bundle.label,
        partition=partition.to_list(),
        pairings={ray.name: (cls * ray.cls).integrate() for ray in variety.nef_rays},
        strict=False,
        bundle_nef=nef,
    )


def corollary_restriction_check(
    variety: VarietyModel,
    bundle: BundleModel,
    partition: Sequence[int],
    power: int,
    omega: Optional[CohomClass] = None
) -> RayPairingReport:
    """int s_lambda(E) . omega^m . rho > 0 over the pseudo-effective rays, |lambda| + m + 1 = n.

    ``omega`` defaults to the sum of the nef rays, an ample class on the catalogue.

    Raises:
        DegreeMismatchError: if |lambda| + m + 1 != n
        MissingConeDataError: without pseudo-effective rays
    """
    partition = as_partition(partition).check_rank(bundle.rank)
    if partition.weight + power + 1 != variety.dimension:
        raise DegreeMismatchError(
            f"|lambda| + m + 1 = {partition.weight + power + 1} but {variety.name} has dimension {variety.dimension}"
        )
    variety.require_cone_data()
    if omega is None:
        omega = _ray_sum(variety.nef_rays)
    _check_divisor(omega, "omega")
    restricted = schur_class(bundle, partition) * omega ** power
    return RayPairingReport(
        check='corollary',
        variety=variety.name,
        bundle=bundle.label,
        partition=partition.to_list(),
        pairings={ray.name: (restricted * ray.cls).integrate() for ray in variety.pseff_rays},
        strict=True,
        bundle_ample=_ampleness(bundle),
        power=power,
    )
