"""Application configuration using Pydantic Settings"""

from functools import lru_cache
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables"""

    # Application
    APP_NAME: str = "wflag"
    LOG_LEVEL: str = "INFO"

    # Lie layer
    WEYL_CAP: int = 1_000_000  # largest Weyl group the closure will build

    # Series
    TRUNCATION_ORDER: int = 30

    # Groebner engine
    BUCHBERGER_STEP_CAP: int = 1_000_000

    # Search
    SEARCH_MAX_POINTS: int = 5000
    SEARCH_JOBS: int = 1
    MAX_CONES: int = 2

    # Invariants
    FIT_MAX_START: int = 12

    # Data
    DATA_DIR: Optional[str] = None

    model_config = SettingsConfigDict(
        env_prefix="WFLAG_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()
