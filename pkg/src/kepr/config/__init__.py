"""Config package."""

from .settings import settings, Settings, BackendSettings
from .pipeline import (
    BackendEndpoint,
    BackendKind,
    DefinitionSelection,
    Similarity,
    PipelineConfig,
    load_pipeline_config,
)

__all__ = [
    "settings",
    "Settings",
    "BackendSettings",
    "BackendEndpoint",
    "BackendKind",
    "DefinitionSelection",
    "Similarity",
    "PipelineConfig",
    "load_pipeline_config",
]
