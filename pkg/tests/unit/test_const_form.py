from fractions import Fraction

import pytest

from algebra.errors import FormError
from forms.const_form import (
    ConstForm, decomposable, hat, pairing, permutation_sign, pullback, top_coefficient, volume_factor, wedge,
)
from forms.gaussian import GaussianRational


def dz(n, j):
    return ConstForm(n, 1, 0, {((j,), ()): 1})


class TestGaussianRational:

    def test_arithmetic(self):
        a = GaussianRational(Fraction(1), Fraction(2))
        assert a * a.conjugate() == 5
        assert (a / a) == 1
        assert a + 1 == GaussianRational(Fraction(2), Fraction(2))
        assert GaussianRational.i() * GaussianRational.i() == -1

    def test_str(self):
        assert str(GaussianRational(Fraction(1), Fraction(2))) == "1+2i"
        assert str(GaussianRational(Fraction(1), Fraction(-2))) == "1-2i"
        assert str(GaussianRational.of(Fraction(3, 4))) == "3/4"

    def test_float_operand_degrades_to_complex(self):
        assert GaussianRational.i() * 2.0 == 2j


def test_permutation_sign():
    assert permutation_sign([0, 1, 2]) == 1
    assert permutation_sign([1, 0, 2]) == -1
    assert permutation_sign([2, 0, 1]) == 1
    assert permutation_sign([1, 1]) == 0


class TestConstruction:

    def test_rejects_bad_bidegree(self):
        with pytest.raises(FormError):
            ConstForm(2, 3, 0)

    def test_rejects_unsorted_index(self):
        with pytest.raises(FormError):
            ConstForm(2, 2, 0, {((1, 0), ()): 1})

    def test_rejects_out_of_range_index(self):
        with pytest.raises(FormError):
            ConstForm(2, 1, 0, {((2,), ()): 1})

    def test_zero_coefficients_are_dropped(self):
        assert ConstForm(2, 1, 1, {((0,), (0,)): 0}).is_zero()

    def test_coefficient_for_any_ordering(self):
        form = ConstForm(3, 2, 2, {((0, 1), (0, 2)): 5})
        assert form.coefficient((1, 0), (0, 2)) == -5
        assert form.coefficient((1, 0), (2, 0)) == 5
        assert form.coefficient((0, 0), (0, 2)) == 0


class TestWedge:

    def test_volume_form_on_c2(self):
        product = wedge(ConstForm.dz_dzbar(2, 0, 0), ConstForm.dz_dzbar(2, 1, 1))
        assert product == ConstForm.dvol(2)
        assert product.coefficient((0, 1), (0, 1)) == 1

    def test_one_forms_anticommute(self):
        assert wedge(dz(2, 0), dz(2, 1)).coefficient((0, 1), ()) == 1
        assert wedge(dz(2, 1), dz(2, 0)).coefficient((0, 1), ()) == -1
        assert wedge(dz(2, 0), dz(2, 0)).is_zero()

    def test_unit_is_identity(self):
        form = ConstForm.dz_dzbar(3, 0, 2, GaussianRational(Fraction(1), Fraction(1)))
        assert wedge(form, ConstForm.unit(3)) == form
        assert wedge(ConstForm.unit(3), form) == form

    def test_dimension_overflow_gives_zero(self):
        assert wedge(ConstForm.dz_dzbar(1, 0, 0), ConstForm.dz_dzbar(1, 0, 0)).is_zero()

    def test_associative(self):
        a = ConstForm.dz_dzbar(3, 0, 1)
        b = ConstForm.dz_dzbar(3, 1, 2, 2)
        c = ConstForm.dz_dzbar(3, 2, 0)
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))

    def test_mixed_bidegree_addition(self):
        with pytest.raises(FormError):
            ConstForm.dz_dzbar(2, 0, 0) + ConstForm.dvol(2)
        assert ConstForm.dvol(2) + ConstForm.zero(2) == ConstForm.dvol(2)


class TestVolume:

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_dvol_is_product_of_unit_forms(self, n):
        product = ConstForm.unit(n)
        for j in range(n):
            product = wedge(product, ConstForm.dz_dzbar(n, j, j))
        assert product == ConstForm.dvol(n)
        assert top_coefficient(product) == 1

    def test_volume_factor_values(self):
        assert volume_factor(1) == GaussianRational.i()
        assert volume_factor(2) == 1
        assert volume_factor(4) == 1

    def test_top_coefficient_needs_top_degree(self):
        with pytest.raises(FormError):
            top_coefficient(ConstForm.dz_dzbar(2, 0, 0))


class TestHat:

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_defining_equation(self, n):
        for j in range(n):
            for k in range(n):
                assert pairing(ConstForm.dz_dzbar(n, j, k), hat(n, j, k)) == 1

    def test_hat_on_c3(self):
        assert hat(3, 0, 0) == wedge(ConstForm.dz_dzbar(3, 1, 1), ConstForm.dz_dzbar(3, 2, 2))

    def test_mismatched_pairing_vanishes(self):
        assert pairing(ConstForm.dz_dzbar(3, 0, 0), hat(3, 1, 1)) == 0

    def test_pairing_rejects_non_complementary(self):
        with pytest.raises(FormError):
            pairing(ConstForm.dz_dzbar(3, 0, 0), ConstForm.dz_dzbar(3, 1, 1))


class TestReality:

    def test_unit_forms_are_real(self):
        assert ConstForm.dz_dzbar(2, 0, 0).is_real()
        assert ConstForm.dvol(3).is_real()

    def test_off_diagonal_needs_partner(self):
        assert not ConstForm.dz_dzbar(2, 0, 1).is_real()
        assert (ConstForm.dz_dzbar(2, 0, 1) + ConstForm.dz_dzbar(2, 1, 0)).is_real()

    def test_real_coefficient_without_i_is_not_real(self):
        assert not ConstForm(2, 1, 1, {((0,), (0,)): 1}).is_real()

    def test_conjugate_swaps_indices(self):
        assert ConstForm.dz_dzbar(2, 0, 1).conjugate() == ConstForm.dz_dzbar(2, 1, 0)

    def test_floating_forms(self):
        form = ConstForm.dz_dzbar(2, 0, 0).to_complex()
        assert not form.exact
        assert form.is_real()


class TestDecomposable:

    def test_standard_basis_gives_volume(self):
        assert decomposable([[1, 0], [0, 1]]) == ConstForm.dvol(2)

    def test_single_vector(self):
        form = decomposable([[1, 1]])
        # i (dz_1 + dz_2) ^ (dzbar_1 + dzbar_2)
        for j in range(2):
            for k in range(2):
                assert form.coefficient((j,), (k,)) == GaussianRational.i()

    def test_empty(self):
        with pytest.raises(FormError):
            decomposable([])


class TestPullback:

    def test_diagonal_scales_volume_by_abs_det_squared(self):
        assert pullback(ConstForm.dvol(2), [[2, 0], [0, 3]]) == ConstForm.dvol(2) * 36

    def test_swap_preserves_volume(self):
        assert pullback(ConstForm.dvol(2), [[0, 1], [1, 0]]) == ConstForm.dvol(2)

    def test_swap_moves_unit_form(self):
        assert pullback(ConstForm.dz_dzbar(2, 0, 0), [[0, 1], [1, 0]]) == ConstForm.dz_dzbar(2, 1, 1)


class TestJson:

    def test_to_json_uses_one_based_indices(self):
        assert ConstForm.dz_dzbar(2, 0, 1).to_json() == {'n': 2, 'p': 1, 'q': 1, 'terms': [[[1], [2], 0, 1]]}

    def test_rational_strings_stay_exact(self):
        form = ConstForm.from_json({'n': 1, 'terms': [[[1], [1], 0, "1/2"]]})
        assert form.exact
        assert form.coefficient((0,), (0,)) == GaussianRational(Fraction(0), Fraction(1, 2))

    def test_floats_give_complex_form(self):
        form = ConstForm.from_json({'n': 1, 'terms': [[[1], [1], 0.0, 1.0]]})
        assert not form.exact
        assert form.coefficient((0,), (0,)) == 1j

    def test_unsorted_indices_are_antisymmetrized(self):
        form = ConstForm.from_json({'n': 2, 'terms': [[[2, 1], [1, 2], 1, 0]]})
        assert form.coefficient((0, 1), (0, 1)) == -1

    def test_repeated_indices_vanish(self):
        form = ConstForm.from_json({'n': 2, 'p': 2, 'q': 2, 'terms': [[[1, 1], [1, 2], 1, 0]]})
        assert form.is_zero()
        assert form.bidegree == (2, 2)

    def test_malformed_term(self):
        with pytest.raises(FormError):
            ConstForm.from_json({'n': 1, 'terms': [[[1], [1], 1]]})

    def test_roundtrip_preserves_form(self):
        form = hat(3, 0, 2) + hat(3, 2, 0)
        assert ConstForm.from_json(form.to_json()) == form
