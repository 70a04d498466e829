"""Declarative pipeline configuration.

A config file is a flat JSON object. Unknown keys are rejected, relative
paths resolve against the config file's directory, and only backend
endpoints may be overridden from the environment (see BackendSettings).
"""

import json
import logging
import os
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from kepr.config.settings import BackendSettings
from kepr.exceptions import ConfigError
from kepr.models import MarkerSet, MatchMode

logger = logging.getLogger(__name__)

_PATH_FIELDS = (
    "dataset",
    "dictionary",
    "stop_words",
    "lexicon",
    "idf_table",
    "model",
    "rules",
    "generator_fixture",
    "scorer_fixture",
)


class BackendKind(str, Enum):
    MOCK = "mock"
    SUBPROCESS = "subprocess"
    SOCKET = "socket"


class DefinitionSelection(str, Enum):
    DENSE = "dense"
    PRIMARY = "primary"


class Similarity(str, Enum):
    DOT = "dot"
    COSINE = "cosine"


class BackendEndpoint(BaseModel):
    """Where and how to reach one backend.

    ``endpoint`` is a command line for subprocess backends and ``host:port``
    or ``unix:/path`` for socket backends. Mock backends read ``fixture``.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    kind: BackendKind = BackendKind.MOCK
    endpoint: Optional[str] = None
    fixture: Optional[Path] = None
    pipelining: bool = False

    @model_validator(mode="after")
    def _endpoint_required(self) -> "BackendEndpoint":
        if self.kind != BackendKind.MOCK and not self.endpoint:
            raise ValueError(f"{self.name} backend of kind '{self.kind.value}' needs an endpoint")
        return self


class PipelineConfig(BaseModel):
    """All paths, hyperparameters and backend endpoints of a pipeline run."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    # Paths
    dataset: Optional[Path] = None
    dictionary: Optional[Path] = None
    stop_words: Optional[Path] = None
    lexicon: Optional[Path] = None
    idf_table: Optional[Path] = None
    model: Optional[Path] = None
    rules: Optional[Path] = None
    generator_fixture: Optional[Path] = None
    scorer_fixture: Optional[Path] = None

    # Hyperparameters
    m: int = Field(default=2, ge=1)
    n: int = Field(default=2, ge=1)
    beam_width: int = Field(default=24, ge=1)
    retain: int = Field(default=12, ge=1)
    final_count: int = Field(default=10, ge=1)
    max_answer_tokens: int = Field(default=3, ge=1)
    seed: int = 0
    learning_rate: float = Field(default=0.5, gt=0)
    epochs: int = Field(default=200, ge=1)
    workers: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)

    # Prompt layout and retrieval
    marker_bos: str = "<BOS>"
    marker_sep: str = "<SEP>"
    marker_mask: str = "<MASK>"
    marker_eos: str = "<EOS>"
    definition_selection: DefinitionSelection = DefinitionSelection.DENSE
    similarity: Similarity = Similarity.DOT
    match_policy: MatchMode = MatchMode.EXACT_NORMALIZED

    # Ablation switches
    use_knowledge: bool = True
    use_rewrite: bool = True
    use_ranker: bool = True

    # Backends
    generator_kind: BackendKind = BackendKind.MOCK
    generator_endpoint: Optional[str] = None
    generator_pipelining: bool = False
    scorer_kind: BackendKind = BackendKind.MOCK
    scorer_endpoint: Optional[str] = None
    scorer_pipelining: bool = False
    embedder_kind: BackendKind = BackendKind.MOCK
    embedder_endpoint: Optional[str] = None
    embedder_pipelining: bool = False
    embedder_dim: int = Field(default=256, ge=1)

    @model_validator(mode="after")
    def _consistent(self) -> "PipelineConfig":
        if self.final_count > self.retain:
            raise ValueError(
                f"final_count ({self.final_count}) must not exceed retain ({self.retain})"
            )
        markers = [self.marker_bos, self.marker_sep, self.marker_mask, self.marker_eos]
        if any(not marker for marker in markers) or len(set(markers)) != len(markers):
            raise ValueError("markers must be non-empty and pairwise distinct")
        return self

    @property
    def markers(self) -> MarkerSet:
        return MarkerSet(
            bos=self.marker_bos, sep=self.marker_sep, mask=self.marker_mask, eos=self.marker_eos
        )

    def backend(self, name: str) -> BackendEndpoint:
        """Endpoint of the generator, scorer or embedder backend."""
        fixtures = {"generator": self.generator_fixture, "scorer": self.scorer_fixture}
        return BackendEndpoint(
            name=name,
            kind=getattr(self, f"{name}_kind"),
            endpoint=getattr(self, f"{name}_endpoint"),
            fixture=fixtures.get(name),
            pipelining=getattr(self, f"{name}_pipelining"),
        )

    def with_overrides(self, **overrides: Any) -> "PipelineConfig":
        """Copy with the given non-None fields replaced, re-validated."""
        data = self.model_dump()
        data.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return PipelineConfig(**data)
        except ValidationError as e:
            raise ConfigError(f"invalid configuration: {e}") from e

    def require(self, field: str) -> Path:
        """Path named by ``field``; it must be set and exist."""
        value = getattr(self, field)
        if value is None:
            raise ConfigError(f"configuration value '{field}' is required")
        if not Path(value).exists():
            raise ConfigError(f"'{field}' points to a missing file: {value}")
        return Path(value)


def _environment_overrides() -> Dict[str, Any]:
    env = BackendSettings()
    return {k: v for k, v in env.model_dump().items() if v is not None}


def load_pipeline_config(path: Optional[Path] = None) -> PipelineConfig:
    """Load a config file (or the defaults) and apply backend env overrides.

    Raises:
        ConfigError: If the file is unreadable, not a flat JSON object, has
            unknown keys or invalid values
    """
    data: Dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"config {path} is not valid JSON: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"config {path} must be a JSON object")
        for key in _PATH_FIELDS:
            value = data.get(key)
            if isinstance(value, str) and not Path(value).is_absolute():
                data[key] = str(path.parent / value)

    data.update(_environment_overrides())
    try:
        config = PipelineConfig(**data)
    except ValidationError as e:
        raise ConfigError(f"invalid configuration: {e}") from e

    logger.debug(f"Loaded pipeline config from {path or 'defaults'}")
    return config
