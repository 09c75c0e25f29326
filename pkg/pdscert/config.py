"""
Configuration settings for pdscert.
"""

from functools import lru_cache
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Settings loaded from ``PDSCERT_*`` environment variables or ``.env``."""

    model_config = SettingsConfigDict(
        env_prefix="PDSCERT_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Parallelism
    jobs: int = Field(
        default=1,
        ge=1,
        description="Worker processes for branch-parallel work (1 = in-process)"
    )

    # Search
    search_timeout: Optional[float] = Field(
        default=None,
        gt=0,
        description="Time limit for search in seconds (None = unbounded)"
    )
    prune_automorphisms: bool = Field(
        default=False,
        description="Pin a largest weight to point 0 in plane weight searches"
    )

    # Output
    log_level: str = Field(
        default="WARNING",
        description="Level for the pdscert logger (DEBUG, INFO, WARNING, ...)"
    )
    certificate_indent: int = Field(
        default=2,
        ge=0,
        description="JSON indentation for certificates"
    )


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
