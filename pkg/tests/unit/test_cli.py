import json

import pytest
import yaml

from algebra.chern_ring import ChernPoly
from algebra.schur import schur_poly
from bin.schurkit import EXIT_FAILS, EXIT_OK, EXIT_USAGE, run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def invoke_json(capsys, *argv):
    code, out, _ = invoke(capsys, *argv)
    return code, json.loads(out)


class TestCalculus:

    def test_schur(self, capsys):
        code, data = invoke_json(capsys, "schur", "--lambda", "2,1", "--rank", "3")
        assert code == EXIT_OK
        assert data['lambda'] == [2, 1]
        assert ChernPoly.from_json(data['poly']) == schur_poly([2, 1], 3)

    def test_part_larger_than_rank(self, capsys):
        code, out, err = invoke(capsys, "schur", "--lambda", "4", "--rank", "3")
        assert code == EXIT_USAGE
        assert out == ""
        assert "Error" in err

    def test_decompose_expression(self, capsys):
        code, data = invoke_json(capsys, "decompose", "--poly", "c1^3 - c3")
        assert code == EXIT_OK
        assert data['schur_coefficients'] == {'(2,1)': '2', '(1,1,1)': '1'}
        assert data['numerically_positive'] is True

    def test_decompose_json(self, capsys):
        poly = ChernPoly.chern(2, 2) * -1
        code, data = invoke_json(capsys, "decompose", "--poly", json.dumps(poly.to_json()))
        assert code == EXIT_OK
        assert data['schur_coefficients'] == {'(2)': '-1'}
        assert data['numerically_positive'] is False

    def test_decompose_rejects_bad_json(self, capsys):
        code, _, err = invoke(capsys, "decompose", "--poly", "{not json")
        assert code == EXIT_USAGE
        assert "--poly" in err

    def test_decompose_parse_error_reports_position(self, capsys):
        code, _, err = invoke(capsys, "decompose", "--poly", "c1 +")
        assert code == EXIT_USAGE
        assert "position 4" in err

    def test_segre(self, capsys):
        code, data = invoke_json(capsys, "segre", "--k", "2", "--rank", "2")
        assert code == EXIT_OK
        assert data['expression'] == "c1^2 - c2"

    def test_twist(self, capsys):
        code, data = invoke_json(capsys, "twist", "--lambda", "1,1", "--rank", "2")
        assert code == EXIT_OK
        assert data['lambda'] == [1, 1]

    def test_derived(self, capsys):
        code, data = invoke_json(capsys, "derived", "--lambda", "2", "--i", "1", "--rank", "2")
        assert code == EXIT_OK
        # s_(2)^(1) = (r - 1) c_1
        assert data['schur_coefficients'] == {'(1)': '1'}
        code, _, _ = invoke(capsys, "derived", "--lambda", "2", "--i", "-1", "--rank", "2")
        assert code == EXIT_USAGE


class TestIntersect:

    def test_point_class(self, capsys):
        code, data = invoke_json(capsys, "intersect", "--variety", "P3", "--classes", "H,H,H")
        assert code == EXIT_OK
        assert data['value'] == "1"

    def test_chern_classes_of_bundle(self, capsys):
        code, data = invoke_json(capsys, "intersect", "--variety", "P3", "--bundle", "O(1)+O(1)+O(1)",
                                 "--classes", "c1", "--classes", "c2")
        assert code == EXIT_OK
        assert data['value'] == "9"

    def test_projectivized_bundle(self, capsys):
        code, data = invoke_json(capsys, "intersect", "--variety", "P2", "--projectivize", "O(0)+O(1)",
                                 "--classes", "xi,xi,H")
        assert code == EXIT_OK
        assert data['value'] == "-1"

    def test_degree_mismatch(self, capsys):
        code, _, err = invoke(capsys, "intersect", "--variety", "P3", "--classes", "H,H")
        assert code == EXIT_USAGE
        assert "degree 2" in err


class TestEngineCommands:

    def test_theorem_a_spot_value(self, capsys):
        code, data = invoke_json(capsys, "check-theorem-a", "--variety", "P3", "--bundle", "O(1)+O(1)+O(1)",
                                 "--lambda", "1,1")
        assert code == EXIT_OK
        assert data['pairings'] == {'H': '6'}
        assert data['verdict'] == 'strictly-positive'

    def test_theorem_a_negative_control(self, capsys):
        code, data = invoke_json(capsys, "check-theorem-a", "--variety", "P3", "--bundle", "O(1)+O(−1)",
                                 "--lambda", "2")
        assert code == EXIT_FAILS
        assert data['verdict'] == 'fails(H)'
        assert data['pairings'] == {'H': '-1'}

    def test_bundle_parse_error(self, capsys):
        code, out, err = invoke(capsys, "check-theorem-a", "--variety", "P3", "--bundle", "O(1",
                                "--lambda", "1,1")
        assert code == EXIT_USAGE
        assert out == ""
        assert "position 3" in err

    def test_unknown_variety(self, capsys):
        code, _, err = invoke(capsys, "check-theorem-a", "--variety", "Q3", "--bundle", "O(1)",
                              "--lambda", "1,1")
        assert code == EXIT_USAGE
        assert "Q3" in err

    def test_text_format(self, capsys):
        code, out, _ = invoke(capsys, "check-theorem-a", "--variety", "P3", "--bundle", "O(1)+O(1)+O(1)",
                              "--lambda", "1,1", "--format", "text")
        assert code == EXIT_OK
        assert out.splitlines()[0].split() == ['field', 'value']
        assert "pairings:" in out

    def test_hodge_index(self, capsys):
        code, data = invoke_json(capsys, "hodge-index", "--variety", "P1xP1xP1", "--bundle",
                                 "O(1,1,1)+O(1,1,1)", "--lambda", "2")
        assert code == EXIT_OK
        assert data['signature'] == [1, 0, 2]
        assert data['matrix'] == [["0", "2", "2"], ["2", "0", "2"], ["2", "2", "0"]]

    def test_perturb_with_margin(self, capsys):
        code, data = invoke_json(capsys, "perturb", "--variety", "P3", "--bundle", "O(1)+O(1)+O(1)",
                                 "--lambda", "1,1", "--omega", "H", "--margin")
        assert code == EXIT_OK
        assert data['coefficients'] == ["6", "-12", "6"]
        assert data['margin']['bound'] == "1/3"

    def test_movable(self, capsys):
        code, data = invoke_json(capsys, "movable", "--variety", "P3", "--bundle", "O(1)+O(0)", "--lambda", "2")
        assert code == EXIT_OK
        assert data['pairings'] == {'H': '0'}
        code, _, _ = invoke(capsys, "movable", "--variety", "P3", "--bundle", "O(1)+O(−1)", "--lambda", "2")
        assert code == EXIT_FAILS

    def test_corollary(self, capsys):
        code, data = invoke_json(capsys, "corollary", "--variety", "P3", "--bundle", "O(1)+O(1)+O(1)",
                                 "--lambda", "1", "--m", "1")
        assert code == EXIT_OK
        assert data['pairings'] == {'H': '3'}
        assert data['m'] == 1


class TestForms:

    @pytest.fixture
    def forms_file(self, tmp_path):
        def write(payload):
            path = tmp_path / "forms.json"
            path.write_text(json.dumps(payload))
            return str(path)
        return write

    def test_indefinite_matrix_fails(self, capsys, forms_file):
        # i * [[1, 2], [2, 1]] on dz_j ^ dzbar_k
        form = {'n': 2, 'terms': [[[1], [1], 0, 1], [[1], [2], 0, 2], [[2], [1], 0, 2], [[2], [2], 0, 1]]}
        code, data = invoke_json(capsys, "form-check", "--file", forms_file(form))
        assert code == EXIT_FAILS
        assert data['results'][0]['kind'] == 'violated'
        assert data['verdict'] == 'fails'

    def test_list_of_forms_strict(self, capsys, forms_file):
        unit = {'n': 2, 'terms': [[[1], [1], 0, 1], [[2], [2], 0, 1]]}
        volume = {'n': 2, 'terms': [[[1, 2], [1, 2], 1, 0]]}
        code, data = invoke_json(capsys, "form-check", "--file", forms_file({'forms': [unit, volume]}),
                                 "--mode", "strict")
        assert code == EXIT_OK
        assert [r['kind'] for r in data['results']] == ['positive-strict', 'positive-strict']

    def test_non_real_form(self, capsys, forms_file):
        code, _, err = invoke(capsys, "form-check", "--file", forms_file({'n': 2, 'terms': [[[1], [2], 0, 1]]}))
        assert code == EXIT_USAGE
        assert "real" in err

    def test_zero_samples_is_a_usage_error(self, capsys, forms_file):
        middle = {'n': 4, 'terms': [[[1, 2], [1, 2], 1, 0]]}
        code, out, err = invoke(capsys, "form-check", "--file", forms_file(middle), "--samples", "0")
        assert code == EXIT_USAGE
        assert out == ""
        assert "--samples" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = invoke(capsys, "form-check", "--file", str(tmp_path / "missing.json"))
        assert code == EXIT_USAGE


def test_cw_lab(capsys):
    code, data = invoke_json(capsys, "cw-lab", "--n", "2", "--r", "2", "--seed", "7", "--samples", "2",
                             "--positivity-samples", "20")
    assert code == EXIT_OK
    assert data['samples'] == 2
    assert data['griffiths_positive'] == 2
    code, _, _ = invoke(capsys, "cw-lab", "--n", "0", "--r", "2")
    assert code == EXIT_USAGE


def test_suite(capsys, tmp_path):
    profile = tmp_path / "tiny.yaml"
    profile.write_text(yaml.safe_dump({
        'suite': {'name': 'cli-tiny'},
        'grid': {'varieties': ['P2'], 'max_rank': 1, 'degrees': [1]},
        'report': {'output_dir': str(tmp_path / "reports"), 'formats': ['json']},
    }))
    code, data = invoke_json(capsys, "suite", "--profile", str(profile), "--db", str(tmp_path / "tiny.db"))
    assert code == EXIT_OK
    assert data['total'] == 4
    assert data['failed'] == 0
    assert len(data['reports']) == 1


def test_usage_errors(capsys):
    assert invoke(capsys, "no-such-command")[0] == EXIT_USAGE
    assert invoke(capsys, "schur", "--rank", "3")[0] == EXIT_USAGE
    assert invoke(capsys, "--help")[0] == EXIT_OK
