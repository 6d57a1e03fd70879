"""Report rendering for suite runs and CLI payloads.

HTML suite reports are rendered with jinja2; aligned-text tables for the CLI
are rendered with tabulate from the same JSON payloads the CLI prints, so
text output never computes anything on its own.
"""

import json
import logging
from collections import Counter, OrderedDict
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from jinja2 import BaseLoader, Environment
from tabulate import tabulate

logger = logging.getLogger(__name__)

REPORT_TEMPLATE = """
<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <title>{{ title }}</title>
    <style>
        body {
            font-family: -apple-system, BlinkMacSystemFont, 'Segoe UI', Roboto, sans-serif;
            line-height: 1.6;
            color: #333;
            max-width: 1400px;
            margin: 0 auto;
            padding: 20px;
            background: #f5f5f5;
        }
        header { background: #1f2937; color: white; padding: 20px 30px; border-radius: 8px; margin-bottom: 20px; }
        .card { background: white; border-radius: 8px; padding: 20px; margin-bottom: 20px; }
        .grid { display: grid; grid-template-columns: repeat(auto-fit, minmax(200px, 1fr)); gap: 20px; margin-bottom: 20px; }
        .metric-card { background: white; border-radius: 8px; padding: 20px; text-align: center; }
        .metric-value { font-size: 2em; font-weight: bold; color: #1f2937; }
        .metric-label { color: #666; font-size: 0.9em; margin-top: 5px; }
        table { width: 100%; border-collapse: collapse; margin: 15px 0; }
        th, td { padding: 10px; text-align: left; border-bottom: 1px solid #eee; font-family: monospace; }
        th { background: #f8f9fa; font-weight: 600; }
        .verdict-fail { color: #dc2626; }
        .verdict-error { color: #f59e0b; }
        .verdict-pass { color: #10b981; }
        footer { text-align: center; padding: 20px; color: #666; font-size: 0.9em; }
    </style>
</head>
<body>
    <header>
        <h1>{{ title }}</h1>
        <p>Suite run: {{ run_name }} (#{{ run_id }})</p>
        <p>Duration: {{ duration }}</p>
        <p>Generated: {{ generated_at }}</p>
    </header>

    <section class="grid">
        <div class="metric-card">
            <div class="metric-value">{{ summary.total }}</div>
            <div class="metric-label">Checks Run</div>
        </div>
        <div class="metric-card">
            <div class="metric-value">{{ summary.instances }}</div>
            <div class="metric-label">Instances</div>
        </div>
        <div class="metric-card">
            <div class="metric-value verdict-fail">{{ summary.failed }}</div>
            <div class="metric-label">Failed</div>
        </div>
        <div class="metric-card">
            <div class="metric-value verdict-error">{{ summary.errors }}</div>
            <div class="metric-label">Errors</div>
        </div>
    </section>

    <section class="card">
        <h2>Verdicts by Check</h2>
        <table>
            <tr><th>Check</th><th>Verdict</th><th>Count</th></tr>
            {% for row in summary.verdict_counts %}
            <tr><td>{{ row.check }}</td><td>{{ row.verdict }}</td><td>{{ row.count }}</td></tr>
            {% endfor %}
        </table>
    </section>

    {% if summary.problems %}
    <section class="card">
        <h2>Failed and Errored Instances</h2>
        <table>
            <tr><th>Check</th><th>Variety</th><th>Bundle</th><th>&lambda;</th><th>Verdict</th></tr>
            {% for row in summary.problems %}
            <tr>
                <td>{{ row.check }}</td>
                <td>{{ row.variety }}</td>
                <td>{{ row.bundle }}</td>
                <td>({{ row['lambda'] }})</td>
                <td class="{{ 'verdict-error' if row.verdict == 'error' else 'verdict-fail' }}">{{ row.verdict }}</td>
            </tr>
            {% endfor %}
        </table>
    </section>
    {% endif %}

    {% if summary.signatures %}
    <section class="card">
        <h2>Hodge-Index Signatures</h2>
        <table>
            <tr><th>Variety</th><th>Signature (n+, n0, n-)</th><th>Instances</th></tr>
            {% for row in summary.signatures %}
            <tr><td>{{ row.variety }}</td><td>({{ row.signature }})</td><td>{{ row.count }}</td></tr>
            {% endfor %}
        </table>
    </section>
    {% endif %}

    {% if config %}
    <section class="card">
        <h2>Profile</h2>
        <pre>{{ config | tojson(indent=2) }}</pre>
    </section>
    {% endif %}

    <footer>schurkit suite report</footer>
</body>
</html>
"""

PASSING_VERDICTS = frozenset({'strictly-positive', 'passes'})


class ReportGenerator:
    """Generates HTML suite reports.

    Report sections:
    1. Summary - check, instance, failure and error counts
    2. Verdicts by check
    3. Failed and errored instances
    4. Hodge-index signatures per variety
    5. Profile
    """

    def __init__(self, output_dir: str = "./reports"):
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.env = Environment(loader=BaseLoader(), autoescape=True)
        self.template = self.env.from_string(REPORT_TEMPLATE)

    def generate(
        self,
        run_name: str,
        run_id: int,
        results: List[Dict],
        config: Optional[Dict] = None,
        start_time: Optional[datetime] = None,
        end_time: Optional[datetime] = None
    ) -> str:
        """Generate an HTML report for one suite run.

        Args:
            run_name: Name of the suite run
            run_id: Storage ID of the run
            results: Rows from SuiteStorage.get_results
            config: Suite profile (optional)
            start_time: Suite start time
            end_time: Suite end time

        Returns:
            Path to the generated report file
        """
        duration = "Unknown"
        if start_time and end_time:
            delta = end_time - start_time
            minutes = int(delta.total_seconds() // 60)
            seconds = delta.total_seconds() % 60
            duration = f"{minutes}m {seconds:.1f}s"

        html = self.template.render(
            title=f"Schur Positivity Suite: {run_name}",
            run_name=run_name,
            run_id=run_id,
            duration=duration,
            generated_at=datetime.utcnow().strftime('%Y-%m-%d %H:%M:%S UTC'),
            summary=summarize_results(results),
            config=config,
        )

        report_path = self.output_dir / f"suite_{run_id}.html"
        with open(report_path, 'w') as f:
            f.write(html)
        logger.debug(f"Rendered {len(results)} results into {report_path}")
        return str(report_path)


def summarize_results(results: List[Mapping[str, Any]]) -> Dict[str, Any]:
    """Counts, problem rows and signature histogram of stored suite results."""
    verdicts = Counter((row['check'], row['verdict']) for row in results)
    problems = [
        {key: row[key] for key in ('check', 'variety', 'bundle', 'lambda', 'verdict')}
        for row in results if row['verdict'] not in PASSING_VERDICTS
    ]
    signatures = Counter(
        (row['variety'], row['signature'])
        for row in results if row['check'] == 'hodge_index' and row.get('signature')
    )
    return {
        'total': len(results),
        'instances': len({(row['variety'], row['bundle'], row['lambda']) for row in results}),
        'failed': sum(1 for row in problems if row['verdict'] != 'error'),
        'errors': sum(1 for row in problems if row['verdict'] == 'error'),
        'verdict_counts': [
            {'check': check, 'verdict': verdict, 'count': count}
            for (check, verdict), count in sorted(verdicts.items())
        ],
        'problems': problems,
        'signatures': [
            {'variety': variety, 'signature': signature, 'count': count}
            for (variety, signature), count in sorted(signatures.items())
        ],
    }


def suite_summary_table(summary: Mapping[str, Any]) -> str:
    """Aligned-text verdict table of a summarize_results payload."""
    rows = [(r['check'], r['verdict'], r['count']) for r in summary['verdict_counts']]
    text = tabulate(rows, headers=['check', 'verdict', 'count'], tablefmt='simple')
    if summary['problems']:
        text += "\n\n" + tabulate(summary['problems'], headers='keys', tablefmt='simple')
    return text


def _is_scalar(value: Any) -> bool:
    return value is None or isinstance(value, (str, int, float, bool))


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, list) and all(_is_scalar(v) for v in value):
        return "(" + ",".join(str(v) for v in value) + ")"
    if value is None:
        return "-"
    return str(value)


def render_text(payload: Mapping[str, Any], title: Optional[str] = None) -> str:
    """Render a CLI JSON payload as aligned-text tables.

    Scalars (and flat lists) go into one field/value table; each mapping of
    scalars, list of rows or list of records gets its own titled table;
    nested mappings recurse. Keys are visited in sorted order.
    """
    sections = []
    scalars = [
        (key, _cell(value)) for key, value in sorted(payload.items())
        if _is_scalar(value) or (isinstance(value, list) and all(_is_scalar(v) for v in value))
    ]
    if scalars:
        sections.append(tabulate(scalars, headers=['field', 'value'], tablefmt='simple'))
    for key, value in sorted(payload.items()):
        if isinstance(value, Mapping):
            if value and all(_is_scalar(v) for v in value.values()):
                rows = [(k, _cell(v)) for k, v in value.items()]
                sections.append(f"{key}:\n" + tabulate(rows, headers=['key', 'value'], tablefmt='simple'))
            elif value:
                sections.append(render_text(value, title=key))
        elif isinstance(value, list) and value and not all(_is_scalar(v) for v in value):
            if all(isinstance(v, Mapping) for v in value):
                records = [OrderedDict((k, _cell(x)) for k, x in v.items()) for v in value]
                sections.append(f"{key}:\n" + tabulate(records, headers='keys', tablefmt='simple'))
            else:
                rows = [[_cell(x) for x in v] if isinstance(v, list) else [_cell(v)] for v in value]
                sections.append(f"{key}:\n" + tabulate(rows, tablefmt='plain'))
    text = "\n\n".join(sections)
    if title is not None:
        text = f"[{title}]\n{text}"
    return text


def render_json(payload: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(payload, sort_keys=True, indent=2)
