"""Configuration management using pydantic-settings."""

import math

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings."""

    model_config = SettingsConfigDict(
        env_prefix="LOCAL_PRESSURE_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Gibbs diagnostics defaults
    slope_tol: float = Field(default=0.01, gt=0)  # nats per step
    const_bound: float = Field(default=math.exp(10.0), gt=1)
    eq_tol: float = Field(default=1e-8, gt=0)

    # Perron solver
    perron_tol: float = Field(default=1e-13, gt=0)
    perron_max_iter: int = Field(default=100_000, ge=1)

    # Brute-force partition function budget (number of words)
    oracle_max_words: int = Field(default=2**20, ge=1)

    # Per-point fan-out
    threads: int = Field(default=1, ge=1)

    log_level: str = "WARNING"

    # Run history
    database_url: str = "sqlite:///./data/runs.db"


# Global settings instance
settings = Settings()
