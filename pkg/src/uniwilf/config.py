"""
Centralized configuration for uniwilf.
Loads UNIWILF_* environment variables (and an optional .env file) and
provides defaults for the CLI and the extension search.
"""
from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Main application settings"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="UNIWILF_",
        case_sensitive=False,
        extra="ignore"
    )

    # Logging
    log_level: str = "INFO"

    # Extension search defaults
    default_max_size: int = 8
    branch_cap: int = 10000
    threads: int = 1
    constraint_form: str = "target"
    symmetry_reduction: bool = True

    # Output
    output_format: str = "json"


@lru_cache()
def get_settings() -> Settings:
    """
    Return the Settings singleton.
    lru_cache avoids re-reading the .env file on every call.
    """
    return Settings()
