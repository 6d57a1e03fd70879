"""Suite orchestration: profile -> instance grid -> engine checks -> storage -> report.

Usage:
    schurkit suite --profile configs/suite_profiles/smoke.yaml
"""

import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from analysis.report_generator import ReportGenerator
from analysis.theorem_engine import (
    check_theorem_A, hodge_index_matrix, movable_nonnegativity_check, perturbation_check,
)
from geometry.bundle_dsl import parse_bundle
from geometry.catalogue import get_variety

from .config import apply_defaults, load_profile
from .grid import Instance, instance_grid
from .scheduler import CheckOutcome, CheckScheduler
from .storage import SuiteStorage

logger = logging.getLogger(__name__)


def _resolve(instance: Instance):
    variety = get_variety(instance.variety)
    return variety, parse_bundle(instance.bundle, variety)


def run_theorem_a(instance: Instance):
    variety, bundle = _resolve(instance)
    return check_theorem_A(variety, bundle, instance.partition)


def run_hodge_index(instance: Instance):
    variety, bundle = _resolve(instance)
    return hodge_index_matrix(variety, bundle, instance.partition)


def run_perturbation(instance: Instance):
    """omega = L = sum of the nef rays."""
    variety, bundle = _resolve(instance)
    ample = variety.nef_rays[0].cls
    for ray in variety.nef_rays[1:]:
        ample = ample + ray.cls
    return perturbation_check(variety, bundle, instance.partition, ample, ample)


def run_movable(instance: Instance):
    variety, bundle = _resolve(instance)
    return movable_nonnegativity_check(variety, bundle, instance.partition)


CHECKS: Dict[str, Callable[[Instance], Any]] = {
    'theorem_a': run_theorem_a,
    'hodge_index': run_hodge_index,
    'perturbation': run_perturbation,
    'movable': run_movable,
}


def outcome_verdict(outcome: CheckOutcome) -> str:
    if outcome.error is not None:
        return 'error'
    label = getattr(outcome.report, 'verdict_label', None)
    if label is not None:
        return label
    return 'passes' if outcome.report.passed else 'fails'


class SuiteOrchestrator:
    """Runs a suite profile end to end."""

    def __init__(self, config_path: Optional[str] = None, config: Optional[Dict[str, Any]] = None):
        """Initialize the orchestrator.

        Args:
            config_path: Path to a suite profile YAML file
            config: Already-loaded profile, used when no path is given
        """
        if config_path is not None:
            self.config = load_profile(config_path)
        else:
            self.config = apply_defaults(config)
        self.storage: Optional[SuiteStorage] = None
        self.run_id: Optional[int] = None
        self.outcomes: List[CheckOutcome] = []
        self.report_paths: List[str] = []
        self.start_time: Optional[datetime] = None
        self.end_time: Optional[datetime] = None

    def setup_storage(self):
        self.storage = SuiteStorage(self.config['storage']['path'])
        self.run_id = self.storage.create_suite_run(
            name=self.config['suite']['name'],
            config=self.config,
            notes=self.config['suite'].get('notes'),
        )
        logger.info(f"Created suite run with ID: {self.run_id}")

    def _store(self, outcome: CheckOutcome):
        instance = outcome.instance
        payload = outcome.report.to_json() if outcome.report is not None else {'error': outcome.error}
        self.storage.store_result(
            self.run_id,
            variety=instance.variety,
            bundle=instance.bundle,
            partition=instance.partition.to_list(),
            check=outcome.check,
            verdict=outcome_verdict(outcome),
            report=payload,
        )

    def build_scheduler(self) -> CheckScheduler:
        scheduler = CheckScheduler()
        for name, enabled in self.config['checks'].items():
            if not enabled:
                continue
            if name not in CHECKS:
                logger.warning(f"Ignoring unknown check {name!r}")
                continue
            scheduler.add_check(name, CHECKS[name], store_func=self._store if self.storage else None)
        return scheduler

    def instances(self) -> List[Instance]:
        grid = self.config['grid']
        return list(instance_grid(grid['varieties'], grid['max_rank'], grid['degrees']))

    def generate_report(self) -> List[str]:
        """Write the configured report formats and return their paths."""
        report_config = self.config['report']
        output_dir = report_config['output_dir']
        formats = report_config.get('formats', ['html'])
        results = self.storage.get_results(self.run_id)
        paths = []
        if 'html' in formats:
            generator = ReportGenerator(output_dir)
            paths.append(generator.generate(
                run_name=self.config['suite']['name'],
                run_id=self.run_id,
                results=results,
                config=self.config,
                start_time=self.start_time,
                end_time=self.end_time,
            ))
        if 'json' in formats:
            json_path = str(Path(output_dir) / f"suite_{self.run_id}.json")
            Path(output_dir).mkdir(parents=True, exist_ok=True)
            self.storage.export_to_json(self.run_id, json_path)
            paths.append(json_path)
        for path in paths:
            logger.info(f"Report written: {path}")
        return paths

    @property
    def failures(self) -> List[CheckOutcome]:
        return [o for o in self.outcomes if o.status != 'passed']

    def run(self) -> bool:
        """Run the suite.

        Returns:
            True if every check passed on every instance
        """
        try:
            self.setup_storage()
            scheduler = self.build_scheduler()
            instances = self.instances()

            self.start_time = datetime.utcnow()
            logger.info(f"Suite {self.config['suite']['name']} started: "
                        f"{len(instances)} instances, checks {scheduler.check_names}")
            self.outcomes = scheduler.run(instances)
            self.end_time = datetime.utcnow()

            success = not self.failures
            self.storage.complete_suite_run(self.run_id, 'completed' if success else 'failed')
            self.report_paths = self.generate_report()

            logger.info("=" * 60)
            logger.info("SUITE COMPLETE")
            logger.info(f"Duration: {self.end_time - self.start_time}")
            logger.info(f"Checks: {len(self.outcomes)}, not passed: {len(self.failures)}")
            logger.info("=" * 60)
            return success

        except KeyboardInterrupt:
            logger.info("Suite interrupted by user")
            if self.storage and self.run_id:
                self.storage.complete_suite_run(self.run_id, 'interrupted')
            return False
        except Exception as e:
            logger.exception(f"Suite failed with error: {e}")
            if self.storage and self.run_id:
                self.storage.complete_suite_run(self.run_id, 'error')
            return False
