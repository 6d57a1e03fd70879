#!/usr/bin/env python3
"""schurkit command line.

Every subcommand prints one JSON document (or the aligned-text tables
derived from it) on stdout; logging goes to stderr.

Exit codes:
    0  success
    1  a computed verdict fails
    2  usage, parse or domain error

Usage:
    schurkit schur --lambda 2,1 --rank 3
    schurkit check-theorem-a --variety P3 --bundle "O(1)+O(1)+O(1)" --lambda 1,1
    schurkit cw-lab --n 2 --r 2 --seed 7 --samples 100 --format text
    schurkit suite --profile configs/suite_profiles/smoke.yaml
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import click

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from algebra.chern_ring import ChernPoly
from algebra.errors import SchurKitError
from algebra.expr import evaluate_expression, parse_chern_poly, parse_expression
from algebra.partitions import Partition
from algebra.schur import (
    derived_positivity_experiment, is_numerically_positive, schur_decompose, schur_poly, segre_poly,
    twisted_schur,
)
from analysis.report_generator import render_json, render_text, suite_summary_table, summarize_results
from analysis.theorem_engine import (
    Verdict, check_theorem_A, corollary_restriction_check, hodge_index_matrix, movable_nonnegativity_check,
    perturbation_check, perturbation_margin,
)
from forms.chernweil import chern_weil_lab
from forms.const_form import ConstForm
from forms.positivity import is_positive
from geometry.bundle_dsl import parse_bundle
from geometry.bundles import chern_classes
from geometry.catalogue import get_variety
from geometry.variety import evaluate, proj_bundle

logger = logging.getLogger('schurkit')

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_USAGE = 2


def _emit(payload: Dict[str, Any], output_format: str):
    if output_format == 'text':
        click.echo(render_text(payload))
    else:
        click.echo(render_json(payload))


def _format_option(func):
    return click.option(
        '--format', 'output_format', type=click.Choice(['json', 'text']), default='json', show_default=True,
        help='Output format',
    )(func)


def _lambda_option(func):
    return click.option('--lambda', 'partition', required=True, help='Partition, e.g. 2,1')(func)


def _instance_options(func):
    func = _lambda_option(func)
    func = click.option('--bundle', required=True, help='Bundle spec, e.g. "O(1)+O(1)" or "T<1*H>"')(func)
    func = click.option('--variety', required=True, help='Catalogue variety, e.g. P3 or P2xP1')(func)
    return func


def _partition(text: str, rank: Optional[int] = None) -> Partition:
    partition = Partition.parse(text)
    if rank is not None:
        partition.check_rank(rank)
    return partition


def _instance(variety_name: str, spec: str):
    variety = get_variety(variety_name)
    return variety, parse_bundle(spec, variety)


def _read_poly(text: str, rank: Optional[int]) -> ChernPoly:
    """A polynomial given as ChernPoly JSON or as an infix expression in c1..cr."""
    if text.lstrip().startswith('{'):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise click.BadParameter(f"Invalid polynomial JSON: {e}", param_hint='--poly')
        return ChernPoly.from_json(data)
    return parse_chern_poly(text, rank)


@click.group()
@click.option('--verbose', '-v', is_flag=True, help='Enable verbose logging')
def cli(verbose: bool):
    """Exact Schur-class positivity toolkit."""
    logging.getLogger().setLevel(logging.DEBUG if verbose else logging.INFO)


# -- ring and Schur calculus ---------------------------------------------------

@cli.command()
@_lambda_option
@click.option('--rank', type=int, required=True, help='Bundle rank r')
@_format_option
def schur(partition: str, rank: int, output_format: str) -> int:
    """Jacobi-Trudi Schur polynomial s_lambda(c_1, ..., c_r)."""
    parsed = _partition(partition, rank)
    poly = schur_poly(parsed, rank)
    _emit({'lambda': parsed.to_list(), 'rank': rank, 'poly': poly.to_json(), 'expression': str(poly)}, output_format)
    return EXIT_OK


@cli.command()
@click.option('--poly', 'poly_text', required=True, help='ChernPoly JSON or an expression such as "c1^2 - c2"')
@click.option('--rank', type=int, default=None, help='Rank (inferred from the largest c_i by default)')
@_format_option
def decompose(poly_text: str, rank: Optional[int], output_format: str) -> int:
    """Schur-basis coefficients of a weighted-homogeneous polynomial."""
    poly = _read_poly(poly_text, rank)
    coefficients = schur_decompose(poly)
    _emit({
        'poly': poly.to_json(),
        'expression': str(poly),
        'schur_coefficients': {str(p): str(c) for p, c in coefficients.items()},
        'numerically_positive': is_numerically_positive(poly),
    }, output_format)
    return EXIT_OK


@cli.command()
@_lambda_option
@click.option('--rank', type=int, required=True)
@_format_option
def twist(partition: str, rank: int, output_format: str) -> int:
    """s_lambda(E<delta>) as a polynomial in delta."""
    parsed = _partition(partition, rank)
    series = twisted_schur(parsed, rank)
    payload = series.to_json()
    payload.update({'lambda': parsed.to_list(), 'expression': str(series)})
    _emit(payload, output_format)
    return EXIT_OK


@cli.command()
@_lambda_option
@click.option('--i', 'index', type=int, required=True, help='Derived order i')
@click.option('--rank', type=int, required=True)
@_format_option
def derived(partition: str, index: int, rank: int, output_format: str) -> int:
    """Derived Schur polynomial s_lambda^(i) with its Schur expansion."""
    parsed = _partition(partition, rank)
    if index < 0:
        raise click.BadParameter(f"must be non-negative, got {index}", param_hint='--i')
    _emit(derived_positivity_experiment(parsed, index, rank), output_format)
    return EXIT_OK


@cli.command()
@click.option('--k', 'degree', type=int, required=True, help='Segre degree')
@click.option('--rank', type=int, required=True)
@_format_option
def segre(degree: int, rank: int, output_format: str) -> int:
    """Segre polynomial: degree-k part of 1/(1 - c_1 + c_2 - ...)."""
    poly = segre_poly(degree, rank)
    _emit({'k': degree, 'rank': rank, 'poly': poly.to_json(), 'expression': str(poly)}, output_format)
    return EXIT_OK


# -- intersection numbers --------------------------------------------------------

@cli.command()
@click.option('--variety', required=True)
@click.option('--classes', 'class_texts', required=True, multiple=True,
              help='Classes to multiply; repeat the option or separate with commas')
@click.option('--bundle', default=None, help='Bundle whose Chern classes are available as c1..cr')
@click.option('--projectivize', default=None, help='Work on P(E) for this bundle spec; adds the generator xi')
@_format_option
def intersect(variety: str, class_texts: Sequence[str], bundle: Optional[str], projectivize: Optional[str],
              output_format: str) -> int:
    """Intersection number of a product of classes."""
    model = get_variety(variety)
    if projectivize is not None:
        model = proj_bundle(model, parse_bundle(projectivize, model))
    env = model.generator_classes()
    if bundle is not None:
        bundle_model = parse_bundle(bundle, model)
        env.update({f"c{k}": cls for k, cls in enumerate(chern_classes(bundle_model), start=1)})
    texts = [piece.strip() for text in class_texts for piece in text.split(',') if piece.strip()]
    classes = [evaluate_expression(parse_expression(text), env, model.unit()) for text in texts]
    value = evaluate(model, classes)
    _emit({
        'variety': model.name,
        'classes': [cls.label() for cls in classes],
        'value': str(value),
    }, output_format)
    return EXIT_OK


# -- theorem engine -------------------------------------------------------------------

@cli.command('check-theorem-a')
@_instance_options
@_format_option
def check_theorem_a(variety: str, bundle: str, partition: str, output_format: str) -> int:
    """Pair s_lambda(E) with the pseudo-effective rays (|lambda| = n - 1)."""
    model, bundle_model = _instance(variety, bundle)
    report = check_theorem_A(model, bundle_model, _partition(partition))
    _emit(report.to_json(), output_format)
    return EXIT_FAILS if report.verdict == Verdict.FAILS else EXIT_OK


@cli.command('hodge-index')
@_instance_options
@_format_option
def hodge_index(variety: str, bundle: str, partition: str, output_format: str) -> int:
    """Gram matrix of s_lambda^(1)(E) on the ray basis and its signature."""
    model, bundle_model = _instance(variety, bundle)
    report = hodge_index_matrix(model, bundle_model, _partition(partition))
    _emit(report.to_json(), output_format)
    return EXIT_OK if report.passed else EXIT_FAILS


def _divisor_or_ample(model, text: Optional[str]):
    if text is not None:
        return model.parse_class(text)
    model.require_cone_data()
    total = model.nef_rays[0].cls
    for ray in model.nef_rays[1:]:
        total = total + ray.cls
    return total


@cli.command()
@_instance_options
@click.option('--omega', default=None, help='Twist direction (default: sum of nef rays)')
@click.option('--line', 'line_text', default=None, help='Divisor L paired with (default: sum of nef rays)')
@click.option('--margin', is_flag=True, help='Also compute the exact twist margin along omega')
@_format_option
def perturb(variety: str, bundle: str, partition: str, omega: Optional[str], line_text: Optional[str],
            margin: bool, output_format: str) -> int:
    """Expansion of int s_lambda(E<-t omega>) . L in t."""
    model, bundle_model = _instance(variety, bundle)
    parsed = _partition(partition)
    omega_cls = _divisor_or_ample(model, omega)
    report = perturbation_check(model, bundle_model, parsed, omega_cls, _divisor_or_ample(model, line_text))
    payload = report.to_json()
    passed = report.passed
    if margin:
        margin_report = perturbation_margin(model, bundle_model, parsed, omega_cls)
        payload['margin'] = margin_report.to_json()
        passed = passed and margin_report.passed
    _emit(payload, output_format)
    return EXIT_OK if passed else EXIT_FAILS


@cli.command()
@_instance_options
@_format_option
def movable(variety: str, bundle: str, partition: str, output_format: str) -> int:
    """int s_lambda(E) . L >= 0 against the nef rays."""
    model, bundle_model = _instance(variety, bundle)
    report = movable_nonnegativity_check(model, bundle_model, _partition(partition))
    _emit(report.to_json(), output_format)
    return EXIT_OK if report.passed else EXIT_FAILS


@cli.command()
@_instance_options
@click.option('--m', 'power', type=int, required=True, help='Power of omega, |lambda| + m + 1 = n')
@click.option('--omega', default=None, help='Ample divisor (default: sum of nef rays)')
@_format_option
def corollary(variety: str, bundle: str, partition: str, power: int, omega: Optional[str],
              output_format: str) -> int:
    """int s_lambda(E) . omega^m . rho > 0 over the pseudo-effective rays."""
    model, bundle_model = _instance(variety, bundle)
    omega_cls = model.parse_class(omega) if omega is not None else None
    report = corollary_restriction_check(model, bundle_model, _partition(partition), power, omega_cls)
    _emit(report.to_json(), output_format)
    return EXIT_OK if report.passed else EXIT_FAILS


# -- forms ------------------------------------------------------------------------------

def _load_forms(path: str) -> List[ConstForm]:
    with open(path) as f:
        data = json.load(f)
    if isinstance(data, dict) and 'forms' in data:
        data = data['forms']
    if isinstance(data, dict):
        data = [data]
    return [ConstForm.from_json(item) for item in data]


@cli.command('form-check')
@click.option('--file', 'path', required=True, type=click.Path(exists=True, dir_okay=False),
              help='JSON file holding a form, a list of forms or {"forms": [...]}')
@click.option('--mode', type=click.Choice(['semi', 'strict']), default='semi', show_default=True)
@click.option('--samples', type=int, default=10000, show_default=True,
              help='Decomposable test forms for bidegrees without a matrix criterion')
@click.option('--seed', type=int, default=0, show_default=True)
@_format_option
def form_check(path: str, mode: str, samples: int, seed: int, output_format: str) -> int:
    """Positivity of constant-coefficient (p,p)-forms."""
    if samples < 1:
        raise click.BadParameter("must be at least 1", param_hint='--samples')
    try:
        forms = _load_forms(path)
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise click.BadParameter(f"Cannot read forms from {path}: {e}", param_hint='--file')
    verdicts = [is_positive(form, mode=mode, samples=samples, seed=seed) for form in forms]
    _emit({
        'mode': mode,
        'seed': seed,
        'results': [v.to_json() for v in verdicts],
        'verdict': 'passes' if all(v.passed for v in verdicts) else 'fails',
    }, output_format)
    return EXIT_OK if all(v.passed for v in verdicts) else EXIT_FAILS


@cli.command('cw-lab')
@click.option('--n', 'n', type=int, required=True, help='Base dimension')
@click.option('--r', 'r', type=int, required=True, help='Bundle rank')
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--samples', type=int, default=100, show_default=True, help='Nakano-positive tensors to draw')
@click.option('--positivity-samples', type=int, default=1000, show_default=True,
              help='Decomposable test forms per sampled positivity check')
@_format_option
def cw_lab(n: int, r: int, seed: int, samples: int, positivity_samples: int, output_format: str) -> int:
    """Chern-Weil statistics on seeded Nakano-positive curvature tensors."""
    if n < 1 or r < 1 or samples < 1 or positivity_samples < 1:
        raise click.BadParameter("--n, --r, --samples and --positivity-samples must be positive")
    report = chern_weil_lab(n, r, seed, samples, positivity_samples=positivity_samples)
    _emit(report.to_json(), output_format)
    return EXIT_OK


# -- suites -------------------------------------------------------------------------------

@cli.command()
@click.option('--profile', required=True, type=click.Path(exists=True, dir_okay=False), help='Suite profile YAML')
@click.option('--db', default=None, help='Override the storage path')
@click.option('--output-dir', default=None, help='Override the report directory')
@_format_option
def suite(profile: str, db: Optional[str], output_dir: Optional[str], output_format: str) -> int:
    """Run a suite profile: grid, engine checks, storage and reports."""
    from suites.orchestrator import SuiteOrchestrator

    orchestrator = SuiteOrchestrator(profile)
    if db:
        orchestrator.config['storage']['path'] = db
    if output_dir:
        orchestrator.config['report']['output_dir'] = output_dir
    success = orchestrator.run()
    if orchestrator.storage is None or orchestrator.run_id is None:
        return EXIT_USAGE
    summary = summarize_results(orchestrator.storage.get_results(orchestrator.run_id))
    summary['run_id'] = orchestrator.run_id
    summary['reports'] = orchestrator.report_paths
    if output_format == 'text':
        click.echo(suite_summary_table(summary))
    else:
        click.echo(render_json(summary))
    return EXIT_OK if success else EXIT_FAILS


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    try:
        result = cli.main(args=list(argv) if argv is not None else None, prog_name='schurkit',
                          standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    except (SchurKitError, ValueError) as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_USAGE
    return result if isinstance(result, int) else EXIT_OK


def main():
    """Main entry point."""
    logging.basicConfig(
        level=logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    sys.exit(run())


if __name__ == '__main__':
    main()
