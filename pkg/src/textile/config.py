"""
Application configuration.

Uses pydantic-settings to load values from environment variables / .env file.
Every variable is prefixed with TEXTILE_ (e.g. TEXTILE_WORKERS=8).
Command-line flags take precedence over these values.
"""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Central configuration loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="TEXTILE_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",  # ignore unknown env vars
    )

    # ── Parallelism ───────────────────────────────────────────
    # Worker processes for enumeration and batch invariants.
    # 1 runs everything in-process (no pool).
    workers: int = Field(default=1, ge=1)

    # ── Invariants ────────────────────────────────────────────
    # Exponent bound B for the unit search ±p^a q^b t^c, |a|,|b|,|c| <= B.
    unit_bound: int = Field(default=4, ge=1)

    # ── Golden tables ─────────────────────────────────────────
    tables_file: str = ""                 # Custom tables.yaml (default: packaged data/)

    # ── App ───────────────────────────────────────────────────
    log_level: str = "WARNING"

    # Catalog files carry this version; readers reject anything else.
    catalog_schema: int = 1


# Singleton, import this wherever config is needed
settings = Settings()
