import math

import numpy as np
import pytest

from algebra.errors import FormError
from forms.chernweil import (
    CHERN_WEIL_FACTOR, CurvatureTensor, chern_form, chern_weil_lab, form_distance, griffiths_min, random_nakano_positive,
    random_unitary, schur_form, theta_eval,
)
from forms.const_form import ConstForm, wedge
from forms.positivity import form_from_matrix_11, is_positive

THETA0 = np.array([[2.0, 1.0 - 1.0j], [1.0 + 1.0j, 3.0]])


def line_form(theta0):
    """(i / 2 pi) theta0 as a (1,1)-form."""
    return form_from_matrix_11((theta0 / (2 * math.pi)).tolist())


class TestCurvatureTensor:

    def test_rejects_broken_symmetry(self):
        c = np.zeros((2, 2, 1, 1), dtype=complex)
        c[0, 1, 0, 0] = 1.0
        with pytest.raises(FormError):
            CurvatureTensor(c)

    def test_rejects_bad_shape(self):
        with pytest.raises(FormError):
            CurvatureTensor(np.zeros((2, 3, 1, 1)))
        with pytest.raises(FormError):
            CurvatureTensor.from_matrix(np.eye(3), 2, 2)

    def test_matrix_reindexing(self):
        tensor = random_nakano_positive(2, 3, seed=4)
        again = CurvatureTensor.from_matrix(tensor.to_matrix(), 2, 3)
        assert np.array_equal(again.c, tensor.c)

    def test_nakano_sample_symmetry_is_exact(self):
        tensor = random_nakano_positive(3, 2, seed=9)
        assert np.array_equal(tensor.c, tensor.c.transpose(1, 0, 3, 2).conj())

    def test_nakano_rejects_empty_dimensions(self):
        with pytest.raises(FormError):
            random_nakano_positive(0, 2, seed=0)

    def test_json_keeps_tensor(self):
        tensor = random_nakano_positive(2, 2, seed=1)
        restored = CurvatureTensor.from_json(tensor.to_json())
        assert np.allclose(restored.c, tensor.c, atol=0, rtol=1e-15)


class TestTheta:

    def test_identity_gives_frobenius_norm(self):
        tensor = CurvatureTensor.from_matrix(np.eye(6), 2, 3)
        u = np.array([[1.0, 2.0j, 0.0], [1.0 - 1.0j, 0.0, 3.0]])
        assert theta_eval(tensor, u) == pytest.approx(1 + 4 + 2 + 9)

    def test_zero_tensor(self):
        assert theta_eval(CurvatureTensor.zero(2, 2), np.ones((2, 2))) == 0.0

    def test_rank_one_tensor(self):
        v = np.array([1.0, 1.0j, 2.0, -1.0])
        tensor = CurvatureTensor.from_matrix(np.outer(v, v.conj()), 2, 2)
        u = np.array([[1.0, 0.5], [2.0j, 1.0]])
        assert theta_eval(tensor, u) == pytest.approx(abs(np.sum(v * u.reshape(-1))) ** 2)

    def test_dimension_mismatch(self):
        with pytest.raises(FormError):
            theta_eval(CurvatureTensor.zero(2, 2), np.ones((2, 3)))


class TestGriffithsMin:

    def test_identity(self):
        result = griffiths_min(CurvatureTensor.from_matrix(np.eye(4), 2, 2))
        assert result.value == pytest.approx(1.0)
        assert result.positive

    def test_negative_direction_is_found(self):
        matrix = np.eye(4)
        # row (j=1, lambda=0) is the decomposable e_1 (x) e_0
        matrix[2, 2] = -1.0
        result = griffiths_min(CurvatureTensor.from_matrix(matrix, 2, 2), seed=3)
        assert result.value == pytest.approx(-1.0)
        assert not result.positive
        assert abs(result.xi[1]) == pytest.approx(1.0)
        assert abs(result.s[0]) == pytest.approx(1.0)

    @pytest.mark.parametrize("seed", range(5))
    def test_nakano_samples_are_griffiths_positive(self, seed):
        tensor = random_nakano_positive(3, 2, seed)
        result = griffiths_min(tensor, seed=seed)
        assert result.positive
        assert result.value >= tensor.nakano_lower_bound() - 1e-10

    def test_to_json(self):
        data = griffiths_min(CurvatureTensor.from_matrix(np.eye(2), 1, 2), restarts=2, seed=5).to_json()
        assert data['restarts'] == 2
        assert data['seed'] == 5
        assert len(data['xi']) == 1
        assert len(data['s']) == 2


class TestChernForms:

    def test_c0_is_one(self):
        assert chern_form(random_nakano_positive(2, 2, 0), 0) == ConstForm.unit(2, exact=False)

    def test_out_of_range_is_zero(self):
        assert chern_form(random_nakano_positive(2, 3, 0), 3).is_zero()

    def test_zero_tensor(self):
        assert chern_form(CurvatureTensor.zero(3, 2), 1).is_zero()
        assert chern_form(CurvatureTensor.zero(3, 2), 2).is_zero()

    def test_first_chern_form_is_trace(self):
        tensor = random_nakano_positive(3, 2, 2)
        trace = np.einsum('jkll->jk', tensor.c) / (2 * math.pi)
        assert form_distance(chern_form(tensor, 1), line_form(trace)) < 1e-12

    def test_scalar_curvature_gives_binomials(self):
        a = line_form(THETA0)
        tensor = CurvatureTensor.scalar(THETA0, 2)
        assert form_distance(chern_form(tensor, 1), a * 2.0) < 1e-12
        assert form_distance(chern_form(tensor, 2), wedge(a, a)) < 1e-12

    def test_chern_weil_factor(self):
        assert CHERN_WEIL_FACTOR == pytest.approx(1j / (2 * math.pi))

    @pytest.mark.parametrize("n,r", [(2, 2), (3, 2), (2, 3), (3, 3)])
    def test_determinant_matches_trace(self, n, r):
        tensor = random_nakano_positive(n, r, seed=n * 10 + r)
        for k in range(1, min(n, r) + 1):
            assert form_distance(chern_form(tensor, k, 'determinant'), chern_form(tensor, k, 'trace')) < 1e-10

    @pytest.mark.parametrize("seed", range(3))
    def test_gauge_invariance(self, seed):
        rng = np.random.default_rng(seed)
        tensor = random_nakano_positive(3, 3, rng)
        gauged = tensor.conjugate_fiber(random_unitary(3, rng))
        for k in range(1, 4):
            assert form_distance(chern_form(tensor, k), chern_form(gauged, k)) < 1e-10

    def test_chern_forms_are_real(self):
        tensor = random_nakano_positive(3, 2, 8)
        for k in range(1, 3):
            assert chern_form(tensor, k).is_real(tolerance=1e-12)

    @pytest.mark.slow
    def test_methods_and_gauge_on_many_tensors(self):
        shapes = [(n, r) for n in range(1, 5) for r in range(1, 5)]
        rng = np.random.default_rng(50)
        for index in range(50):
            n, r = shapes[index % len(shapes)]
            tensor = random_nakano_positive(n, r, rng)
            gauged = tensor.conjugate_fiber(random_unitary(r, rng))
            for k in range(1, min(n, r) + 1):
                determinant = chern_form(tensor, k, 'determinant')
                scale = max(1.0, determinant.max_abs())
                assert form_distance(determinant, chern_form(tensor, k, 'trace')) < 1e-10 * scale, (n, r, k)
                assert form_distance(determinant, chern_form(gauged, k)) < 1e-10 * scale, (n, r, k)

    def test_unknown_method(self):
        with pytest.raises(FormError):
            chern_form(random_nakano_positive(2, 2, 0), 1, 'eigen')

    def test_random_unitary(self):
        u = random_unitary(4, np.random.default_rng(0))
        assert np.allclose(u @ u.conj().T, np.eye(4))


class TestSchurForms:

    def test_single_box_is_first_chern_form(self):
        tensor = random_nakano_positive(2, 2, 6)
        assert form_distance(schur_form(tensor, [1]), chern_form(tensor, 1)) < 1e-12

    def test_scalar_curvature_two_columns(self):
        a = line_form(THETA0)
        form = schur_form(CurvatureTensor.scalar(THETA0, 2), [1, 1])
        assert form_distance(form, wedge(a, a) * 3.0) < 1e-12

    def test_methods_agree(self):
        tensor = random_nakano_positive(3, 2, 4)
        assert form_distance(schur_form(tensor, [2, 1]), schur_form(tensor, [2, 1], 'trace')) < 1e-10

    @pytest.mark.slow
    def test_rank_two_second_chern_form_is_positive(self):
        for seed in range(100):
            form = schur_form(random_nakano_positive(2, 2, seed), [2])
            assert is_positive(form, 'semi').passed, f"seed {seed}"


def test_lab_reports_statistics():
    report = chern_weil_lab(n=2, r=2, seed=7, samples=3, positivity_samples=50)
    assert report.samples == 3
    assert report.griffiths_positive == 3
    assert report.griffiths_below_nakano == 0
    assert report.max_method_gap < 1e-10
    assert report.max_gauge_gap < 1e-10
    assert [stats.partition for stats in report.schur_forms] == [[1], [2], [1, 1]]
    assert all(stats.exact_test for stats in report.schur_forms)
    assert all(stats.passed + stats.failed == 3 for stats in report.schur_forms)
    data = report.to_json()
    assert data['schur_forms'][0]['partition'] == [1]
