"""Suite result storage on SQLAlchemy (SQLite by default)."""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

from sqlalchemy import (
    Column, DateTime, ForeignKey, Integer, MetaData, String, Table, Text, create_engine, insert, select, update,
)

logger = logging.getLogger(__name__)

metadata = MetaData()

suite_runs = Table(
    'suite_runs', metadata,
    Column('id', Integer, primary_key=True, autoincrement=True),
    Column('name', String, nullable=False),
    Column('start_time', DateTime, nullable=False),
    Column('end_time', DateTime),
    Column('config', Text),
    Column('notes', Text),
    Column('status', String, default='running'),
)

instance_results = Table(
    'instance_results', metadata,
    Column('id', Integer, primary_key=True, autoincrement=True),
    Column('run_id', Integer, ForeignKey('suite_runs.id'), nullable=False, index=True),
    Column('variety', String, nullable=False),
    Column('bundle', String, nullable=False),
    Column('lambda', String, nullable=False),
    Column('check', String, nullable=False),
    Column('verdict', String),
    Column('pairings', Text),
    Column('signature', String),
    Column('raw_data', Text),
)


class SuiteStorage:
    """Stores suite runs and per-instance check results.

    Tables:
    - suite_runs: Suite run metadata
    - instance_results: One row per (instance, check)
    """

    def __init__(self, db_path: str = "suites.db"):
        if db_path != ':memory:':
            Path(db_path).parent.mkdir(parents=True, exist_ok=True)
        self.db_path = db_path
        self.engine = create_engine(f"sqlite:///{db_path}")
        metadata.create_all(self.engine)

    def create_suite_run(self, name: str, config: Optional[Dict[str, Any]] = None, notes: Optional[str] = None) -> int:
        """Create a suite run and return its ID."""
        with self.engine.begin() as conn:
            result = conn.execute(insert(suite_runs).values(
                name=name,
                start_time=datetime.utcnow(),
                config=json.dumps(config) if config else None,
                notes=notes,
                status='running',
            ))
            return int(result.inserted_primary_key[0])

    def complete_suite_run(self, run_id: int, status: str = "completed"):
        with self.engine.begin() as conn:
            conn.execute(
                update(suite_runs).where(suite_runs.c.id == run_id).values(end_time=datetime.utcnow(), status=status)
            )

    def store_result(
        self,
        run_id: int,
        variety: str,
        bundle: str,
        partition: List[int],
        check: str,
        verdict: str,
        report: Optional[Dict[str, Any]] = None
    ):
        """Store one check outcome; ``report`` is the check's JSON payload."""
        report = report or {}
        signature = report.get('signature')
        with self.engine.begin() as conn:
            conn.execute(insert(instance_results).values(
                run_id=run_id,
                variety=variety,
                bundle=bundle,
                **{'lambda': ",".join(str(p) for p in partition)},
                check=check,
                verdict=verdict,
                pairings=json.dumps(report['pairings']) if 'pairings' in report else None,
                signature=",".join(str(s) for s in signature) if signature else None,
                raw_data=json.dumps(report, sort_keys=True),
            ))

    def get_results(self, run_id: int, check: Optional[str] = None) -> List[Dict]:
        """Results of a suite run in insertion order."""
        query = select(instance_results).where(instance_results.c.run_id == run_id)
        if check:
            query = query.where(instance_results.c.check == check)
        query = query.order_by(instance_results.c.id)
        with self.engine.connect() as conn:
            return [dict(row._mapping) for row in conn.execute(query)]

    def get_suite_run(self, run_id: int) -> Optional[Dict]:
        with self.engine.connect() as conn:
            row = conn.execute(select(suite_runs).where(suite_runs.c.id == run_id)).first()
            return dict(row._mapping) if row else None

    def list_suite_runs(self, limit: int = 20) -> List[Dict]:
        """List recent suite runs."""
        query = select(suite_runs).order_by(suite_runs.c.start_time.desc()).limit(limit)
        with self.engine.connect() as conn:
            return [dict(row._mapping) for row in conn.execute(query)]

    def export_to_json(self, run_id: int, output_path: str):
        """Export a suite run and all its results to JSON."""
        data = {
            'suite_run': self.get_suite_run(run_id),
            'results': self.get_results(run_id),
        }
        with open(output_path, 'w') as f:
            json.dump(data, f, indent=2, default=str)
        logger.debug(f"Exported suite run {run_id} to {output_path}")
