"""SQLAlchemy database models."""

from datetime import datetime

from sqlalchemy import Column, DateTime, Float, Integer, String, Text
from sqlalchemy.orm import declarative_base

Base = declarative_base()


class ExperimentRun(Base):
    """One recorded CLI report."""

    __tablename__ = "experiment_runs"

    id = Column(Integer, primary_key=True, autoincrement=True)
    command = Column(String, nullable=False, index=True)  # "pressure", "local-pressure", ...
    config_name = Column(String, nullable=False)
    seed = Column(Integer)  # None for runs without an estimator section

    config_json = Column(Text, nullable=False)
    results_json = Column(Text, nullable=False)

    tool_version = Column(String, nullable=False)
    wall_time = Column(Float, nullable=False)  # seconds
    created_at = Column(DateTime, default=datetime.utcnow)
