import random
from fractions import Fraction

import pytest

from algebra.errors import DegreeMismatchError, UnsupportedBundleError
from algebra.schur import elementary_symmetric
from geometry.bundle_dsl import parse_bundle
from geometry.bundles import (
    BundleModel, Summand, chern_class, chern_classes, derived_schur_class, schur_class, split_bundle, tangent_bundle,
)
from geometry.catalogue import get_variety


@pytest.fixture
def p3():
    return get_variety("P3")


def test_split_bundle_whitney_product(p3):
    bundle = parse_bundle("O(1)+O(1)+O(2)", p3)
    h = p3.generator("H")
    assert bundle.rank == 3
    assert chern_class(bundle, 1) == h * 4
    assert chern_class(bundle, 2) == h ** 2 * 5
    assert chern_class(bundle, 3) == h ** 3 * 2
    assert chern_class(bundle, 4).is_zero()
    assert chern_class(bundle, 0) == p3.unit()


def test_whitney_matches_elementary_symmetric_functions():
    rng = random.Random(3)
    for n in range(1, 5):
        pn = get_variety(f"P{n}")
        h = pn.generator("H")
        for r in range(1, 6):
            degrees = [rng.randint(-3, 3) for _ in range(r)]
            bundle = split_bundle(pn, [Summand((a,)) for a in degrees])
            e = elementary_symmetric(degrees)
            for k in range(1, r + 1):
                assert chern_class(bundle, k) == h ** k * e[k - 1]


def test_tangent_bundle_of_p2():
    p2 = get_variety("P2")
    bundle = parse_bundle("T", p2)
    h = p2.generator("H")
    assert bundle.rank == 2
    assert chern_classes(bundle) == [h * 3, h ** 2 * 3]
    assert tangent_bundle(p2).chern == bundle.chern
    assert bundle.is_ample()


def test_tangent_bundle_only_on_projective_space():
    quadric = get_variety("P1xP1")
    with pytest.raises(UnsupportedBundleError):
        parse_bundle("T", quadric)
    with pytest.raises(UnsupportedBundleError):
        tangent_bundle(quadric)


def test_twisted_chern_classes():
    quadric = get_variety("P1xP1")
    bundle = parse_bundle("O(1,1)+O(1,1)<−1/2*f1>", quadric)
    assert bundle.rank == 2
    assert bundle.is_twisted
    assert bundle.twist == quadric.parse_class("-1/2*f1")
    assert chern_class(bundle, 1) == quadric.parse_class("f1 + 2*f2")
    assert bundle.twist_by_factor() == [Fraction(-1, 2), 0]


def test_first_chern_class_of_twist(p3):
    bundle = parse_bundle("O(1)+O(2)", p3)
    h = p3.generator("H")
    for t in [Fraction(1, 3), Fraction(-2), Fraction(5, 7)]:
        assert chern_class(bundle.twisted(h * t), 1) == h * (3 + 2 * t)


def test_twists_compose(p3):
    bundle = parse_bundle("O(1)+O(2)+O(2)", p3)
    h = p3.generator("H")
    once = bundle.twisted(h * Fraction(1, 2)).twisted(h * Fraction(-3, 4))
    direct = bundle.twisted(h * Fraction(-1, 4))
    assert chern_classes(once) == chern_classes(direct)
    assert chern_classes(bundle.twisted(h).twisted(-h)) == chern_classes(bundle)


def test_materialize_folds_the_twist(p3):
    bundle = parse_bundle("O(1)+O(2)<1/3*H>", p3)
    flat = bundle.materialize()
    assert not flat.is_twisted
    assert flat.chern[1:] == tuple(chern_classes(bundle))
    assert schur_class(flat, (2, 1)) == schur_class(bundle, (2, 1))


def test_schur_class_examples(p3):
    h = p3.generator("H")
    assert schur_class(parse_bundle("O(1)+O(1)+O(1)", p3), (1, 1)) == h ** 2 * 6
    assert schur_class(parse_bundle("O(1)+O(2)", p3), (2,)) == h ** 2 * 2
    for r in range(1, 4):
        bundle = parse_bundle("+".join(["O(1)"] * r), p3)
        assert derived_schur_class(bundle, (1,), 1) == p3.unit() * r


def test_ampleness_and_nefness(p3):
    assert parse_bundle("O(1)+O(2)", p3).is_ample()
    assert not parse_bundle("O(1)+O(0)", p3).is_ample()
    assert parse_bundle("O(1)+O(0)", p3).is_nef()
    assert not parse_bundle("O(1)+O(-1)", p3).is_nef()
    assert parse_bundle("O(0)<1/2*H>", p3).is_ample()
    quadric = get_variety("P1xP1")
    assert not parse_bundle("O(1,0)", quadric).is_ample()
    assert parse_bundle("O(1,0)", quadric).is_nef()
    assert parse_bundle("O(2,1)+O(1,1)", quadric).is_ample()


def test_labels_and_json(p3):
    bundle = parse_bundle(" O(1)+O(2) ", p3)
    assert bundle.label == "O(1)+O(2)"
    h = p3.generator("H")
    assert bundle.twisted(h).label == "O(1)+O(2)<H>"
    data = bundle.to_json()
    assert data['rank'] == 2
    assert data['chern'] == ["1", "3*H", "2*H^2"]
    assert data['twist'] == "0"


def test_bundle_validation(p3):
    h = p3.generator("H")
    with pytest.raises(DegreeMismatchError):
        BundleModel(p3, 1, (p3.unit(),), p3.zero(1))
    with pytest.raises(DegreeMismatchError):
        BundleModel(p3, 1, (p3.unit(), h * h), p3.zero(1))
    with pytest.raises(DegreeMismatchError):
        BundleModel(p3, 1, (p3.unit(), h), h * h)
