"""
Runtime configuration for the RA-loop workbench.

Values come from environment variables prefixed with RALOOP_ and from a
local .env file; command-line flags override them per run.
"""

from functools import lru_cache

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class WorkbenchSettings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="RALOOP_", env_file=".env", extra="ignore")

    # Sampled checks on infinite presentations
    seed: int = 0
    sample_bound: int = 3
    sample_trials: int = 10_000
    exhaustive_limit: int = 300_000

    # Loop ring
    modulus: int = 3

    # Oracle search bounds
    decompose_max_order: int = 64
    subloop_budget: int = 4096
    retraction_budget: int = 65_536
    classify_max_order: int = 128
    certify_max_order: int = 128

    # Report archive
    database_url: str = "sqlite+aiosqlite:///./raloop_reports.db"
    archive_reports: bool = False

    log_level: str = "INFO"

    @field_validator("sample_bound", "sample_trials")
    @classmethod
    def _non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError("must be non-negative")
        return value


@lru_cache
def get_settings() -> WorkbenchSettings:
    return WorkbenchSettings()
