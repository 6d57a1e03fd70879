import random

import pytest

from algebra.errors import DegreeMismatchError, MissingConeDataError, UnsupportedBundleError
from algebra.schur import segre_poly
from geometry.bundle_dsl import parse_bundle
from geometry.bundles import schur_class
from geometry.catalogue import get_variety
from geometry.variety import evaluate, product, proj_bundle, projective_space, pullback_to_proj_bundle


def test_projective_space_ring():
    p2 = projective_space(2)
    h = p2.generator("H")
    assert p2.basis_size(1) == 1 and p2.h11 == 1
    assert (h * h).integrate() == 1
    assert (h ** 3).is_zero()
    assert [ray.name for ray in p2.pseff_rays] == ["H"]
    assert p2.nef_rays[0].cls == h
    with pytest.raises(ValueError):
        projective_space(0)


def test_integration_examples():
    p3 = get_variety("P3")
    h = p3.generator("H")
    assert evaluate(p3, [h, h, h]) == 1
    p2 = get_variety("P2")
    assert evaluate(p2, [p2.parse_class("2*H"), p2.parse_class("3*H")]) == 6
    with pytest.raises(DegreeMismatchError):
        evaluate(p3, [h, h])
    with pytest.raises(DegreeMismatchError):
        (h * h).integrate()


def test_quadric_surface():
    quadric = get_variety("P1xP1")
    f1, f2 = quadric.generator("f1"), quadric.generator("f2")
    assert (f1 * f1).is_zero() and (f2 * f2).is_zero()
    assert (f1 * f2).integrate() == 1
    assert [ray.name for ray in quadric.pseff_rays] == ["f1", "f2"]


def test_threefold_products():
    cube = get_variety("P1xP1xP1")
    assert cube.h11 == 3
    assert cube.parse_class("f1*f2*f3").integrate() == 1
    assert cube.parse_class("(f1 + f2 + f3)^3").integrate() == 6
    p2p1 = get_variety("P2xP1")
    assert p2p1.dimension == 3
    assert [p2p1.basis_size(d) for d in range(4)] == [1, 2, 2, 1]
    assert p2p1.parse_class("f1^2*f2").integrate() == 1
    assert p2p1.parse_class("f1^3").is_zero()


def test_product_renames_clashing_generators():
    model = product(projective_space(1), projective_space(2))
    assert model.generators == ("f1", "f2")
    assert model.name == "P1xP2"
    assert model.factors == (1, 2)
    assert (model.generator("f1") * model.generator("f2") ** 2).integrate() == 1


def test_integration_is_multilinear_and_symmetric():
    rng = random.Random(7)
    cube = get_variety("P1xP1xP1")
    for _ in range(10):
        a, b, c, d = [cube.divisor([rng.randint(-3, 3) for _ in range(3)]) for _ in range(4)]
        assert evaluate(cube, [a, b, c]) == evaluate(cube, [c, a, b])
        assert evaluate(cube, [a + d, b, c]) == evaluate(cube, [a, b, c]) + evaluate(cube, [d, b, c])
        assert evaluate(cube, [a * 2, b, c]) == 2 * evaluate(cube, [a, b, c])


def test_class_arithmetic_and_labels():
    quadric = get_variety("P1xP1")
    cls = quadric.parse_class("2*f1 + f2")
    assert cls.label() == "2*f1 + f2"
    assert quadric.zero(1).label() == "0"
    assert quadric.zero(1) == quadric.zero(2)
    assert quadric.generator_coefficients(cls) == [2, 1]
    assert (cls - cls).is_zero()
    assert cls.to_json() == {'degree': 1, 'class': "2*f1 + f2", 'coords': ["2", "1"]}
    with pytest.raises(DegreeMismatchError):
        cls + quadric.unit()


def test_classes_from_different_models_do_not_mix():
    with pytest.raises(DegreeMismatchError):
        projective_space(2).generator("H") + projective_space(2).generator("H")


def test_proj_bundle_of_trivial_bundle_is_a_product():
    p1 = get_variety("P1")
    total = proj_bundle(p1, parse_bundle("O(0)+O(0)", p1))
    xi = total.generator("xi")
    f = total.generator("H")
    assert total.dimension == 2
    assert (xi * xi).is_zero()
    assert (xi * f).integrate() == 1
    assert not total.has_cone_data
    with pytest.raises(MissingConeDataError):
        total.require_cone_data()


def test_proj_bundle_relation_sign():
    p2 = get_variety("P2")
    total = proj_bundle(p2, parse_bundle("O(0)+O(1)", p2))
    xi, h = total.generator("xi"), total.generator("H")
    assert xi * xi == -(xi * h)
    assert (xi * xi * h).integrate() == -1
    assert (xi * h * h).integrate() == 1


def test_proj_bundle_basis_sizes():
    p2 = get_variety("P2")
    total = proj_bundle(p2, parse_bundle("O(1)+O(1)+O(2)", p2))
    assert total.dimension == 4
    # H^*(P^2) (x) span(1, xi, xi^2)
    assert [total.basis_size(d) for d in range(5)] == [1, 2, 3, 2, 1]


def test_proj_bundle_pushes_forward_dual_segre_classes():
    p3 = get_variety("P3")
    bundle = parse_bundle("O(1)+O(2)", p3)
    total = proj_bundle(p3, bundle)
    xi = total.generator("xi")
    h = pullback_to_proj_bundle(total, p3.generator("H"))
    # c(E) = 1 + 3H + 2H^2 on P3
    for k in range(0, 4):
        segre = segre_poly(k, 2).evaluate_rational([3, 2])
        assert (xi ** (1 + k) * h ** (3 - k)).integrate() == (-1) ** k * segre


def test_proj_bundle_rejects_twisted_input():
    p2 = get_variety("P2")
    with pytest.raises(UnsupportedBundleError):
        proj_bundle(p2, parse_bundle("O(1)+O(1)<1/2*H>", p2))
    with pytest.raises(UnsupportedBundleError):
        proj_bundle(get_variety("P3"), parse_bundle("O(1)", p2))


def test_top_column_schur_integrates_to_segre_number():
    for n in range(1, 5):
        pn = get_variety(f"P{n}")
        bundle = parse_bundle("O(1)+O(2)", pn)
        expected = segre_poly(n, 2).evaluate_rational([3, 2])
        assert schur_class(bundle, (1,) * n).integrate() == expected


def test_projective_space_binomial_dimensions():
    for n in range(1, 5):
        pn = get_variety(f"P{n}")
        h = pn.generator("H")
        assert pn.integrate(h ** n) == 1
        assert sum(pn.basis_size(d) for d in range(n + 1)) == n + 1
