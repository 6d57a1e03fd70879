"""Finite cohomology-ring models of desk-scale projective varieties.

A VarietyModel stores a monomial basis per degree, a multiplication table
of structure constants between basis monomials, and the integration
functional on the top-degree basis. Every class here has even real degree,
so the ring is commutative; degrees are complex (H^{k,k} has degree k).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

from algebra.chern_ring import to_rational
from algebra.errors import DegreeMismatchError, MissingConeDataError, UnsupportedBundleError
from algebra.expr import evaluate_expression, parse_expression

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
Coords = Tuple[Fraction, ...]


@dataclass(frozen=True, eq=False)
class VarietyModel:
    """Presentation of H^{*,*}(X, Q) for a catalogue variety.

    Attributes:
        name: Catalogue name such as ``P3`` or ``P2xP1``
        dimension: Complex dimension n
        generators: Names of the degree-1 generators
        basis: ``basis[d]`` lists the monomials spanning degree d, 0 <= d <= n
        table: Product of two basis monomials, as coordinates in the basis of the sum degree
        integration: Value of the integral on each top-degree basis monomial
        pseff_rays: Extremal rays of the pseudo-effective cone of divisors
        nef_rays: Extremal rays of the nef cone of divisors
        factors: Dimensions of the projective-space factors, None off the catalogue
    """
    name: str
    dimension: int
    generators: Tuple[str, ...]
    basis: Tuple[Tuple[Monomial, ...], ...]
    table: Dict[Tuple[Monomial, Monomial], Coords]
    integration: Coords
    pseff_rays: Tuple['Ray', ...] = ()
    nef_rays: Tuple['Ray', ...] = ()
    factors: Optional[Tuple[int, ...]] = None
    _index: Dict[Monomial, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for degree_basis in self.basis:
            for i, monomial in enumerate(degree_basis):
                self._index[monomial] = i

    @property
    def h11(self) -> int:
        return len(self.basis_in(1))

    @property
    def has_cone_data(self) -> bool:
        return bool(self.pseff_rays)

    def basis_in(self, degree: int) -> Tuple[Monomial, ...]:
        if 0 <= degree <= self.dimension:
            return self.basis[degree]
        return ()

    def basis_size(self, degree: int) -> int:
        return len(self.basis_in(degree))

    def index_of(self, monomial: Monomial) -> int:
        return self._index[monomial]

    # -- classes ----------------------------------------------------------

    def zero(self, degree: int) -> 'CohomClass':
        return CohomClass(self, degree, (Fraction(0),) * self.basis_size(degree))

    def unit(self) -> 'CohomClass':
        return CohomClass(self, 0, (Fraction(1),))

    def monomial_class(self, monomial: Monomial) -> 'CohomClass':
        degree = sum(monomial)
        coords = [Fraction(0)] * self.basis_size(degree)
        coords[self.index_of(monomial)] = Fraction(1)
        return CohomClass(self, degree, tuple(coords))

    def generator(self, name: str) -> 'CohomClass':
        if name not in self.generators:
            raise KeyError(f"{self.name} has no generator {name!r}")
        exponents = [0] * len(self.generators)
        exponents[self.generators.index(name)] = 1
        return self.monomial_class(tuple(exponents))

    def generator_classes(self) -> Dict[str, 'CohomClass']:
        return {name: self.generator(name) for name in self.generators}

    def divisor(self, coefficients: Sequence[Any]) -> 'CohomClass':
        """sum_i a_i g_i over the generators, in generator order."""
        if len(coefficients) != len(self.generators):
            raise DegreeMismatchError(
                f"{self.name} has {len(self.generators)} generators, got {len(coefficients)} coefficients"
            )
        total = self.zero(1)
        for name, value in zip(self.generators, coefficients):
            total = total + self.generator(name) * to_rational(value)
        return total

    def generator_coefficients(self, cls: 'CohomClass') -> List[Fraction]:
        """Coefficients of a degree-1 class on each generator."""
        if cls.is_zero():
            return [Fraction(0)] * len(self.generators)
        if cls.degree != 1:
            raise DegreeMismatchError(f"Expected a divisor class, got degree {cls.degree}")
        width = len(self.generators)
        return [cls.coords[self.index_of(tuple(int(i == j) for j in range(width)))] for i in range(width)]

    def parse_class(self, text: str) -> 'CohomClass':
        """Evaluate an infix expression in the generator names (``2*H``, ``(f1+f2)^2``)."""
        return evaluate_expression(parse_expression(text), self.generator_classes(), self.unit())

    def multiply(self, a: 'CohomClass', b: 'CohomClass') -> 'CohomClass':
        degree = a.degree + b.degree
        if degree > self.dimension:
            return self.zero(degree)
        coords = [Fraction(0)] * self.basis_size(degree)
        basis_a = self.basis_in(a.degree)
        basis_b = self.basis_in(b.degree)
        for i, x in enumerate(a.coords):
            if x == 0:
                continue
            for j, y in enumerate(b.coords):
                if y == 0:
                    continue
                product = self.table[(basis_a[i], basis_b[j])]
                weight = x * y
                for k, value in enumerate(product):
                    if value:
                        coords[k] += weight * value
        return CohomClass(self, degree, tuple(coords))

    def integrate(self, cls: 'CohomClass') -> Fraction:
        if cls.is_zero():
            return Fraction(0)
        if cls.degree != self.dimension:
            raise DegreeMismatchError(
                f"Cannot integrate a degree-{cls.degree} class over {self.name} (dimension {self.dimension})"
            )
        return sum((x * w for x, w in zip(cls.coords, self.integration)), Fraction(0))

    def require_cone_data(self):
        if not self.has_cone_data:
            raise MissingConeDataError(f"{self.name} carries no pseudo-effective cone data")

    def __repr__(self) -> str:
        return f"VarietyModel({self.name}, n={self.dimension}, generators={self.generators})"


class CohomClass:
    """A homogeneous class of degree k, as coordinates over the degree-k basis."""

    __slots__ = ('variety', 'degree', 'coords')

    def __init__(self, variety: VarietyModel, degree: int, coords: Sequence[Any]):
        coords = tuple(to_rational(c) for c in coords)
        if len(coords) != variety.basis_size(degree):
            raise DegreeMismatchError(
                f"Degree-{degree} class on {variety.name} needs {variety.basis_size(degree)} coordinates, got {len(coords)}"
            )
        self.variety = variety
        self.degree = degree
        self.coords = coords

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def _check(self, other: 'CohomClass'):
        if other.variety is not self.variety:
            raise DegreeMismatchError(
                f"Classes live on different varieties ({self.variety.name}, {other.variety.name})"
            )

    def __add__(self, other: Any) -> 'CohomClass':
        if isinstance(other, (int, Fraction)):
            other = self.variety.unit() * other
        if not isinstance(other, CohomClass):
            return NotImplemented
        self._check(other)
        if other.degree != self.degree:
            # zero absorbs the degree mismatch so polynomial evaluation can start from 0
            if other.is_zero():
                return self
            if self.is_zero():
                return other
            raise DegreeMismatchError(
                f"Cannot add classes of degree {self.degree} and {other.degree}"
            )
        return CohomClass(self.variety, self.degree, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self) -> 'CohomClass':
        return CohomClass(self.variety, self.degree, tuple(-c for c in self.coords))

    def __sub__(self, other: Any) -> 'CohomClass':
        return self + (-other)

    def __rsub__(self, other: Any) -> 'CohomClass':
        return (-self) + other

    def __mul__(self, other: Any) -> 'CohomClass':
        if isinstance(other, (int, Fraction)):
            factor = to_rational(other)
            return CohomClass(self.variety, self.degree, tuple(c * factor for c in self.coords))
        if not isinstance(other, CohomClass):
            return NotImplemented
        self._check(other)
        return self.variety.multiply(self, other)

    def __rmul__(self, other: Any) -> 'CohomClass':
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, exponent: int) -> 'CohomClass':
        result = self.variety.unit()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, CohomClass):
            return NotImplemented
        if other.variety is not self.variety:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((id(self.variety), self.degree, self.coords))

    def integrate(self) -> Fraction:
        return self.variety.integrate(self)

    def label(self) -> str:
        """Human readable linear combination of basis monomials."""
        if self.is_zero():
            return "0"
        pieces = []
        for monomial, coeff in zip(self.variety.basis_in(self.degree), self.coords):
            if coeff == 0:
                continue
            name = _monomial_name(self.variety.generators, monomial)
            if name == "1":
                pieces.append(str(coeff))
            elif coeff == 1:
                pieces.append(name)
            else:
                pieces.append(f"{coeff}*{name}")
        return " + ".join(pieces)

    def to_json(self) -> Dict[str, Any]:
        return {'degree': self.degree, 'class': self.label(), 'coords': [str(c) for c in self.coords]}

    def __repr__(self) -> str:
        return f"CohomClass({self.variety.name}, deg={self.degree}, {self.label()})"


def _monomial_name(generators: Sequence[str], monomial: Monomial) -> str:
    factors = []
    for name, e in zip(generators, monomial):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


class Ray(NamedTuple):
    """An extremal ray of a cone of divisor classes."""
    name: str
    cls: CohomClass


def projective_space(n: int, generator: str = "H") -> VarietyModel:
    """P^n: basis H^k, H^{n+1} = 0, integral of H^n is 1, both cones spanned by H."""
    if n < 1:
        raise ValueError(f"Projective space needs n >= 1, got {n}")
    basis = tuple(((d,),) for d in range(n + 1))
    table = {
        ((a,), (b,)): (Fraction(1),)
        for a in range(n + 1) for b in range(n + 1 - a)
    }
    model = VarietyModel(
        name=f"P{n}",
        dimension=n,
        generators=(generator,),
        basis=basis,
        table=table,
        integration=(Fraction(1),),
        factors=(n,),
    )
    return _with_rays(model, [(generator, (1,))])


def _with_rays(model: VarietyModel, rays: Sequence[Tuple[str, Monomial]]) -> VarietyModel:
    built = tuple(Ray(name, model.monomial_class(monomial)) for name, monomial in rays)
    object.__setattr__(model, 'pseff_rays', built)
    object.__setattr__(model, 'nef_rays', built)
    return model


def product(first: VarietyModel, second: VarietyModel) -> VarietyModel:
    """Tensor-product ring of two models; integration multiplies.

    Cone data is pulled back from the factors, which is exact for products
    of projective spaces. Clashing generator names are replaced by f1..fm.
    """
    generators = first.generators + second.generators
    if len(set(generators)) != len(generators):
        generators = tuple(f"f{i + 1}" for i in range(len(generators)))
    n = first.dimension + second.dimension
    basis: List[Tuple[Monomial, ...]] = []
    for d in range(n + 1):
        basis.append(tuple(
            a + b
            for i in range(d, -1, -1)
            for a in first.basis_in(i)
            for b in second.basis_in(d - i)
        ))
    split = len(first.generators)
    index = {m: i for degree_basis in basis for i, m in enumerate(degree_basis)}
    table: Dict[Tuple[Monomial, Monomial], Coords] = {}
    for d1 in range(n + 1):
        for d2 in range(n + 1 - d1):
            for m1 in basis[d1]:
                for m2 in basis[d2]:
                    coords = [Fraction(0)] * len(basis[d1 + d2])
                    left_degree = sum(m1[:split]) + sum(m2[:split])
                    right_degree = sum(m1[split:]) + sum(m2[split:])
                    if left_degree > first.dimension or right_degree > second.dimension:
                        table[(m1, m2)] = tuple(coords)
                        continue
                    left = first.table[(m1[:split], m2[:split])]
                    right = second.table[(m1[split:], m2[split:])]
                    for i, x in enumerate(left):
                        if x == 0:
                            continue
                        for j, y in enumerate(right):
                            if y == 0:
                                continue
                            monomial = first.basis[left_degree][i] + second.basis[right_degree][j]
                            coords[index[monomial]] += x * y
                    table[(m1, m2)] = tuple(coords)
    integration = tuple(
        (first.integration[first.index_of(m[:split])] * second.integration[second.index_of(m[split:])])
        if sum(m[:split]) == first.dimension else Fraction(0)
        for m in basis[n]
    )
    factors = None
    if first.factors is not None and second.factors is not None:
        factors = first.factors + second.factors
    model = VarietyModel(
        name=f"{first.name}x{second.name}",
        dimension=n,
        generators=generators,
        basis=tuple(basis),
        table=table,
        integration=integration,
        factors=factors,
    )
    if first.has_cone_data and second.has_cone_data:
        zeros_second = (0,) * len(second.generators)
        zeros_first = (0,) * len(first.generators)
        pseff = [(_ray_monomial(r, first) + zeros_second) for r in first.pseff_rays]
        pseff += [(zeros_first + _ray_monomial(r, second)) for r in second.pseff_rays]
        _with_rays(model, [(_monomial_name(generators, m), m) for m in pseff])
    return model


def _ray_monomial(ray: Ray, variety: VarietyModel) -> Monomial:
    """The basis monomial a catalogue ray is equal to."""
    nonzero = [i for i, c in enumerate(ray.cls.coords) if c != 0]
    if len(nonzero) != 1 or ray.cls.coords[nonzero[0]] != 1:
        raise MissingConeDataError(f"Ray {ray.name} of {variety.name} is not a basis generator")
    return variety.basis_in(1)[nonzero[0]]


def proj_bundle(base: VarietyModel, bundle: Any) -> VarietyModel:
    """Projective bundle of lines P(E) over ``base``.

    Adds a generator xi = c_1(O_{P(E)}(1)) subject to
    xi^r + c_1(E) xi^{r-1} + ... + c_r(E) = 0. Every class reduces to
    sum_{j<r} pi^*(b_j) xi^j and the integral picks the xi^{r-1} coefficient,
    so int xi^{r-1} * pi^*(point) = 1 and pi_*(xi^{r-1+k}) = (-1)^k segre_k,
    the degree-k part of 1/(1 - c_1 + c_2 - ...) evaluated on E.

    No cone data is attached.

    Raises:
        UnsupportedBundleError: for twisted input
    """
    if not bundle.twist.is_zero():
        raise UnsupportedBundleError("proj_bundle needs an untwisted bundle")
    if bundle.variety is not base:
        raise UnsupportedBundleError("Bundle does not live on the given base")
    r = bundle.rank
    chern = [bundle.chern_raw(i) for i in range(r + 1)]
    n = base.dimension + r - 1
    width = len(base.generators)
    basis: List[Tuple[Monomial, ...]] = []
    for d in range(n + 1):
        basis.append(tuple(
            a + (j,)
            for j in range(min(d, r - 1) + 1)
            for a in base.basis_in(d - j)
        ))
    index = {m: i for degree_basis in basis for i, m in enumerate(degree_basis)}

    def reduce(poly: Dict[int, Any]) -> Dict[int, Any]:
        while True:
            high = [j for j, cls in poly.items() if j >= r and not cls.is_zero()]
            if not high:
                return {j: cls for j, cls in poly.items() if j < r}
            top = max(high)
            coefficient = poly.pop(top)
            for i in range(1, r + 1):
                poly[top - i] = poly.get(top - i, base.zero(coefficient.degree + i)) - coefficient * chern[i]

    table: Dict[Tuple[Monomial, Monomial], Coords] = {}
    for d1 in range(n + 1):
        for d2 in range(n + 1 - d1):
            for m1 in basis[d1]:
                for m2 in basis[d2]:
                    coefficient = base.monomial_class(m1[:width]) * base.monomial_class(m2[:width])
                    reduced = reduce({m1[width] + m2[width]: coefficient})
                    coords = [Fraction(0)] * len(basis[d1 + d2])
                    for j, cls in reduced.items():
                        for monomial, value in zip(base.basis_in(cls.degree), cls.coords):
                            if value:
                                coords[index[monomial + (j,)]] += value
                    table[(m1, m2)] = tuple(coords)
    integration = tuple(
        base.integration[base.index_of(m[:width])] if m[width] == r - 1 else Fraction(0)
        for m in basis[n]
    )
    logger.debug(f"Built P({bundle.label}) over {base.name}: dimension {n}")
    return VarietyModel(
        name=f"P({bundle.label})",
        dimension=n,
        generators=base.generators + ("xi",),
        basis=tuple(basis),
        table=table,
        integration=integration,
    )


def pullback_to_proj_bundle(total: VarietyModel, cls: CohomClass) -> CohomClass:
    """pi^* of a base class into a proj_bundle model (xi exponent 0)."""
    coords = [Fraction(0)] * total.basis_size(cls.degree)
    for monomial, value in zip(cls.variety.basis_in(cls.degree), cls.coords):
        if value:
            coords[total.index_of(monomial + (0,))] = value
    return CohomClass(total, cls.degree, tuple(coords))


def evaluate(variety: VarietyModel, classes: Sequence[CohomClass]) -> Fraction:
    """Intersection number of a product of classes.

    Raises:
        DegreeMismatchError: unless the degrees add up to the dimension
    """
    total_degree = sum(cls.degree for cls in classes)
    if total_degree != variety.dimension:
        raise DegreeMismatchError(
            f"Classes of total degree {total_degree} cannot be integrated over {variety.name} (dimension {variety.dimension})"
        )
    result = variety.unit()
    for cls in classes:
        result = result * cls
    return variety.integrate(result)
