"""Runs engine checks over an instance grid on a bounded thread pool."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence

from .config import thread_cap
from .grid import Instance

logger = logging.getLogger(__name__)


@dataclass
class CheckOutcome:
    """Result of one check on one instance; ``report`` is None when the check raised."""
    instance: Instance
    check: str
    report: Any = None
    error: Optional[str] = None

    @property
    def status(self) -> str:
        if self.error is not None:
            return 'error'
        return 'passed' if getattr(self.report, 'passed', False) else 'failed'


@dataclass
class _RegisteredCheck:
    func: Callable[[Instance], Any]
    store_func: Optional[Callable[[CheckOutcome], None]] = None


class CheckScheduler:
    """Schedules named checks over instances.

    Checks are pure, so they run concurrently; outcomes are returned (and
    stored) in grid order whatever order the workers finish in.
    """

    def __init__(self, max_workers: Optional[int] = None):
        """Initialize the scheduler.

        Args:
            max_workers: Thread cap; defaults to SCHURKIT_THREADS
        """
        self.max_workers = max_workers or thread_cap()
        self._checks: Dict[str, _RegisteredCheck] = {}

    def add_check(
        self,
        name: str,
        func: Callable[[Instance], Any],
        store_func: Optional[Callable[[CheckOutcome], None]] = None
    ):
        """Register a check.

        Args:
            name: Unique check name
            func: Callable taking an Instance and returning a report with ``passed``
            store_func: Called with every outcome, in grid order
        """
        self._checks[name] = _RegisteredCheck(func, store_func)

    @property
    def check_names(self) -> List[str]:
        return list(self._checks)

    def _run_one(self, instance: Instance, name: str) -> CheckOutcome:
        try:
            return CheckOutcome(instance, name, report=self._checks[name].func(instance))
        except Exception as e:
            logger.error(f"Check {name} failed on {instance.label()}: {e}")
            return CheckOutcome(instance, name, error=str(e))

    def run(self, instances: Sequence[Instance]) -> List[CheckOutcome]:
        """Run every registered check on every instance."""
        jobs = [(instance, name) for instance in instances for name in self._checks]
        logger.info(f"Running {len(jobs)} checks on {len(instances)} instances with {self.max_workers} workers")
        with ThreadPoolExecutor(max_workers=self.max_workers, thread_name_prefix='schurkit') as pool:
            outcomes = list(pool.map(lambda job: self._run_one(*job), jobs))
        for outcome in outcomes:
            store_func = self._checks[outcome.check].store_func
            if store_func is not None:
                store_func(outcome)
        return outcomes
