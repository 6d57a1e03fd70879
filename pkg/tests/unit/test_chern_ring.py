from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from algebra.chern_ring import ChernPoly, TwistSeries, chern_variables, to_rational
from algebra.errors import NonHomogeneousError, RankMismatchError

RANK = 3


@st.composite
def chern_polys(draw, rank=RANK):
    terms = draw(st.dictionaries(
        st.tuples(*[st.integers(min_value=0, max_value=2)] * rank),
        st.fractions(min_value=-5, max_value=5, max_denominator=4),
        max_size=4,
    ))
    return ChernPoly(rank, terms)


def test_to_rational():
    assert to_rational(3) == Fraction(3)
    assert to_rational("-2/3") == Fraction(-2, 3)
    assert to_rational(Fraction(1, 2)) == Fraction(1, 2)
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_chern_generators_and_conventions():
    c1, c2, c3 = chern_variables(3)
    assert ChernPoly.chern(0, 3) == 1
    assert ChernPoly.chern(4, 3).is_zero()
    assert ChernPoly.chern(-1, 3).is_zero()
    assert (c1 * c2).degrees() == [3]
    assert c3.homogeneous_degree() == 3


def test_string_form_is_canonical():
    c1, c2, _ = chern_variables(3)
    assert str(c1 * c1 - c2) == "c1^2 - c2"
    assert str(ChernPoly.zero(3)) == "0"
    assert str(c2.scale(Fraction(-1, 2)) + 4) == "-1/2*c2 + 4"


def test_degree_part_and_homogeneity():
    c1, c2, _ = chern_variables(3)
    poly = c1 * c1 + c2 + c1
    assert poly.degree_part(2) == c1 * c1 + c2
    assert poly.degree_part(1) == c1
    assert not poly.is_homogeneous()
    with pytest.raises(NonHomogeneousError):
        poly.homogeneous_degree()


def test_rank_mismatch():
    with pytest.raises(RankMismatchError):
        ChernPoly.chern(1, 2) + ChernPoly.chern(1, 3)
    with pytest.raises(RankMismatchError):
        ChernPoly(2, {(1, 0, 0): 1})


def test_evaluate_in_rationals():
    c1, c2, _ = chern_variables(3)
    poly = c1 * c1 - c2
    assert poly.evaluate_rational([3, 3, 1]) == 6
    assert ChernPoly.zero(3).evaluate_rational([1, 2, 3]) == 0


def test_json_codec():
    c1, c2, _ = chern_variables(3)
    poly = (c1 * c1).scale(Fraction(3, 2)) - c2
    data = poly.to_json()
    assert data == {'rank': 3, 'terms': [[[2, 0, 0], "3/2"], [[0, 1, 0], "-1"]]}
    assert ChernPoly.from_json(data) == poly


@given(chern_polys(), chern_polys(), chern_polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ChernPoly.zero(RANK)


@given(chern_polys(), st.fractions(min_value=-3, max_value=3, max_denominator=3))
def test_evaluate_is_a_homomorphism(a, x):
    values = [x, x + 1, 2 * x]
    assert (a * a).evaluate_rational(values) == a.evaluate_rational(values) ** 2


def test_twist_series_arithmetic():
    c1 = ChernPoly.chern(1, 2)
    delta = TwistSeries.delta(2)
    series = TwistSeries.from_poly(c1) + delta * 2
    squared = series * series
    assert squared.coefficient(0) == c1 * c1
    assert squared.coefficient(1) == c1.scale(4)
    assert squared.coefficient(2) == 4
    assert squared.powers() == [0, 1, 2]
    assert (series - series).is_zero()


def test_twist_series_evaluate():
    c1 = ChernPoly.chern(1, 2)
    series = TwistSeries.from_poly(c1) + TwistSeries.delta(2) * 3
    assert series.evaluate([Fraction(2), Fraction(0)], Fraction(1, 3), Fraction(1)) == 3


def test_twist_series_json():
    data = TwistSeries.delta(1).to_json()
    assert data == {'rank': 1, 'delta': [{'power': 1, 'poly': {'rank': 1, 'terms': [[[0], "1"]]}}]}
