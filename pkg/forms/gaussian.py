"""Exact Gaussian rationals a + b*i with Fraction parts."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

from algebra.chern_ring import to_rational

Scalar = Union[complex, 'GaussianRational']


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, value: Any) -> 'GaussianRational':
        if isinstance(value, GaussianRational):
            return value
        return cls(to_rational(value), Fraction(0))

    @classmethod
    def i(cls) -> 'GaussianRational':
        return cls(Fraction(0), Fraction(1))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def conjugate(self) -> 'GaussianRational':
        return GaussianRational(self.re, -self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __neg__(self) -> 'GaussianRational':
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other: Any):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re + other, self.im)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: Any):
        return self + (-other)

    def __rsub__(self, other: Any):
        return (-self) + other

    def __mul__(self, other: Any):
        if isinstance(other, GaussianRational):
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: Any):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re / other, self.im / other)
        if isinstance(other, GaussianRational):
            norm = other.re * other.re + other.im * other.im
            return self * GaussianRational(other.re / norm, -other.im / norm)
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        return f"{self.re}+{self.im}i" if self.im > 0 else f"{self.re}{self.im}i"


def is_exact(value: Any) -> bool:
    return isinstance(value, (GaussianRational, int, Fraction))


def conj(value: Scalar) -> Scalar:
    return value.conjugate()


def to_complex(value: Any) -> complex:
    return complex(value)
