"""Run history: stored CLI reports."""

from .db import Database
from .models import Base, ExperimentRun

__all__ = ["Base", "Database", "ExperimentRun"]
