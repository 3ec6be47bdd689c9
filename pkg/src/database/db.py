"""Run history operations."""

import logging
from pathlib import Path

from pydantic import TypeAdapter
from sqlalchemy import create_engine
from sqlalchemy.engine import make_url
from sqlalchemy.orm import Session, sessionmaker

from ..cli.models import ExperimentConfig, ReportEnvelope, ResultPayload
from .models import Base, ExperimentRun

logger = logging.getLogger(__name__)

_results_adapter = TypeAdapter(ResultPayload)


class Database:
    """Store of CLI reports."""

    def __init__(self, database_url: str = "sqlite:///./data/runs.db"):
        """Initialize database.

        Args:
            database_url: SQLAlchemy database URL
        """
        url = make_url(database_url)
        if url.get_backend_name() == "sqlite" and url.database not in (None, "", ":memory:"):
            Path(url.database).parent.mkdir(parents=True, exist_ok=True)
        self.engine = create_engine(database_url, echo=False)
        self.SessionLocal = sessionmaker(bind=self.engine)

        # Create tables
        Base.metadata.create_all(self.engine)

    def get_session(self) -> Session:
        """Get a new database session."""
        return self.SessionLocal()

    def save_run(self, envelope: ReportEnvelope) -> int:
        """Store a report.

        Args:
            envelope: Report of one CLI invocation

        Returns:
            ID of the stored run
        """
        estimator = envelope.config.estimator
        with self.get_session() as session:
            run = ExperimentRun(
                command=envelope.command,
                config_name=envelope.config.name,
                seed=estimator.seed if estimator is not None else None,
                config_json=envelope.config.model_dump_json(),
                results_json=envelope.results.model_dump_json(),
                tool_version=envelope.tool_version,
                wall_time=envelope.wall_time,
            )
            session.add(run)
            session.commit()
            logger.debug("stored %s run %d", run.command, run.id)
            return run.id

    def get_run(self, run_id: int) -> ReportEnvelope | None:
        """Rebuild the report of a stored run.

        Args:
            run_id: Run ID

        Returns:
            ReportEnvelope or None if there is no such run
        """
        with self.get_session() as session:
            run = session.get(ExperimentRun, run_id)
            if run is None:
                return None
            return ReportEnvelope(
                command=run.command,
                config=ExperimentConfig.model_validate_json(run.config_json),
                results=_results_adapter.validate_json(run.results_json),
                tool_version=run.tool_version,
                wall_time=run.wall_time,
            )

    def list_runs(self, command: str | None = None, limit: int = 20) -> list[ExperimentRun]:
        """Most recent runs first.

        Args:
            command: Only runs of this command
            limit: Maximum number of runs
        """
        with self.get_session() as session:
            query = session.query(ExperimentRun)
            if command:
                query = query.filter(ExperimentRun.command == command)
            return query.order_by(ExperimentRun.id.desc()).limit(limit).all()

    def get_config(self, run_id: int) -> ExperimentConfig | None:
        """Config of a stored run, ready to be re-run."""
        with self.get_session() as session:
            run = session.get(ExperimentRun, run_id)
            return None if run is None else ExperimentConfig.model_validate_json(run.config_json)
