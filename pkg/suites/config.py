"""Suite profile loading."""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

logger = logging.getLogger(__name__)

THREADS_ENV = 'SCHURKIT_THREADS'

DEFAULT_VARIETIES = ['P3', 'P4', 'P2xP1', 'P1xP1xP1']


def apply_defaults(config: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    """Fill in every key a suite run reads."""
    config = dict(config or {})

    config.setdefault('suite', {})
    config['suite'].setdefault('name', 'schur-suite')
    config['suite'].setdefault('notes', None)

    config.setdefault('grid', {})
    config['grid'].setdefault('varieties', list(DEFAULT_VARIETIES))
    config['grid'].setdefault('max_rank', 4)
    config['grid'].setdefault('degrees', [1, 2])

    config.setdefault('checks', {})
    config['checks'].setdefault('theorem_a', True)
    config['checks'].setdefault('hodge_index', True)
    config['checks'].setdefault('perturbation', True)
    config['checks'].setdefault('movable', True)

    config.setdefault('storage', {'path': './data/suites.db'})
    config.setdefault('report', {'output_dir': './reports', 'formats': ['html', 'json']})

    return config


def load_profile(path: str) -> Dict[str, Any]:
    """Read a YAML suite profile and apply defaults.

    Raises:
        FileNotFoundError: if the profile does not exist
    """
    profile_path = Path(path)
    if not profile_path.exists():
        raise FileNotFoundError(f"Suite profile not found: {profile_path}")

    with open(profile_path) as f:
        config = yaml.safe_load(f)

    config = apply_defaults(config)
    logger.info(f"Loaded suite profile {config['suite']['name']} from {profile_path}")
    return config


def thread_cap() -> int:
    """Worker count from SCHURKIT_THREADS; 0, unset or invalid means one per CPU."""
    raw = os.environ.get(THREADS_ENV, '0').strip()
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {THREADS_ENV}={raw!r}")
        value = 0
    if value <= 0:
        return os.cpu_count() or 1
    return value
