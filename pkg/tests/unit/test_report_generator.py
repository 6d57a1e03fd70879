import json
from datetime import datetime, timedelta

from analysis.report_generator import (
    ReportGenerator, render_json, render_text, suite_summary_table, summarize_results,
)


def row(check, verdict, variety="P3", bundle="O(1)+O(1)+O(1)", partition="1,1", signature=None):
    return {'check': check, 'verdict': verdict, 'variety': variety, 'bundle': bundle,
            'lambda': partition, 'signature': signature}


RESULTS = [
    row('theorem_a', 'strictly-positive'),
    row('hodge_index', 'passes', signature="1,0,0"),
    row('theorem_a', 'fails(H)', bundle="O(1)+O(−1)", partition="2"),
    row('movable', 'error', bundle="O(1)+O(−1)", partition="2"),
    row('hodge_index', 'passes', variety="P1xP1xP1", bundle="O(1,1,1)+O(1,1,1)", partition="2", signature="1,0,2"),
]


class TestSummary:

    def test_counts(self):
        summary = summarize_results(RESULTS)
        assert summary['total'] == 5
        assert summary['instances'] == 3
        assert summary['failed'] == 1
        assert summary['errors'] == 1

    def test_verdict_counts_are_sorted(self):
        summary = summarize_results(RESULTS)
        assert summary['verdict_counts'] == [
            {'check': 'hodge_index', 'verdict': 'passes', 'count': 2},
            {'check': 'movable', 'verdict': 'error', 'count': 1},
            {'check': 'theorem_a', 'verdict': 'fails(H)', 'count': 1},
            {'check': 'theorem_a', 'verdict': 'strictly-positive', 'count': 1},
        ]

    def test_problems_and_signatures(self):
        summary = summarize_results(RESULTS)
        assert [p['verdict'] for p in summary['problems']] == ['fails(H)', 'error']
        assert summary['signatures'] == [
            {'variety': 'P1xP1xP1', 'signature': "1,0,2", 'count': 1},
            {'variety': 'P3', 'signature': "1,0,0", 'count': 1},
        ]

    def test_empty_run(self):
        summary = summarize_results([])
        assert summary['total'] == 0
        assert summary['problems'] == []

    def test_summary_table(self):
        text = suite_summary_table(summarize_results(RESULTS))
        assert 'strictly-positive' in text
        assert 'fails(H)' in text
        assert text.splitlines()[0].split() == ['check', 'verdict', 'count']


def test_html_report(tmp_path):
    generator = ReportGenerator(str(tmp_path / "reports"))
    start = datetime(2024, 1, 1, 12, 0, 0)
    path = generator.generate("smoke", 7, RESULTS, config={'suite': {'name': 'smoke'}},
                              start_time=start, end_time=start + timedelta(seconds=75))
    assert path.endswith("suite_7.html")
    html = open(path).read()
    assert "Schur Positivity Suite: smoke" in html
    assert "1m 15.0s" in html
    assert "Failed and Errored Instances" in html
    assert "Hodge-Index Signatures" in html
    assert "fails(H)" in html


class TestRenderText:

    def test_scalars_and_flat_lists(self):
        text = render_text({'verdict': 'passes', 'lambda': [1, 1], 'ample': True, 'reason': None})
        lines = text.splitlines()
        assert lines[0].split() == ['field', 'value']
        assert any(line.split() == ['lambda', '(1,1)'] for line in lines)
        assert any(line.split() == ['ample', 'true'] for line in lines)
        assert any(line.split() == ['reason', '-'] for line in lines)

    def test_mapping_section(self):
        text = render_text({'verdict': 'fails(H)', 'pairings': {'H': '-1'}})
        assert "pairings:" in text
        assert any(line.split() == ['H', '-1'] for line in text.splitlines())

    def test_matrix_section(self):
        text = render_text({'matrix': [["0", "2"], ["2", "0"]]})
        assert text.startswith("matrix:")
        assert text.splitlines()[1:] == ["0  2", "2  0"]

    def test_records_section(self):
        text = render_text({'schur_forms': [{'partition': [1], 'passed': 3}, {'partition': [2], 'passed': 2}]})
        assert "schur_forms:" in text
        assert any(line.split() == ['(1)', '3'] for line in text.splitlines())

    def test_nested_mapping_gets_title(self):
        text = render_text({'outer': {'inner': {'a': 1}, 'b': 2}})
        assert "[outer]" in text
        assert "inner:" in text


def test_render_json_is_deterministic():
    payload = {'b': 1, 'a': {'d': [1, 2], 'c': "x"}}
    assert render_json(payload) == render_json(dict(reversed(list(payload.items()))))
    assert json.loads(render_json(payload)) == payload
