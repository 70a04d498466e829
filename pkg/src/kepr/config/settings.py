"""Process-level settings loaded from environment variables."""

from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    service_name: str = "kepr"
    environment: str = "development"

    # Logging
    log_level: str = "INFO"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


class BackendSettings(BaseSettings):
    """Environment overrides for backend endpoints.

    These are the only values of a pipeline configuration that the
    environment may change, e.g. ``KEPR_GENERATOR_ENDPOINT=localhost:7001``.
    """

    generator_kind: Optional[str] = None
    generator_endpoint: Optional[str] = None
    scorer_kind: Optional[str] = None
    scorer_endpoint: Optional[str] = None
    embedder_kind: Optional[str] = None
    embedder_endpoint: Optional[str] = None

    model_config = SettingsConfigDict(
        env_prefix="KEPR_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


# Global settings instance
settings = Settings()
