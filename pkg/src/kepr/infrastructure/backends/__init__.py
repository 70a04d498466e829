"""Generator, scorer and embedder backends.

Backends are created from a PipelineConfig by
``kepr.infrastructure.backends.factory``.
"""

from kepr.infrastructure.backends.channel import LineChannel, SocketChannel, SubprocessChannel
from kepr.infrastructure.backends.embedder import Embedder, ReferenceEmbedder, RemoteEmbedder
from kepr.infrastructure.backends.generator import (
    GeneratorBackend,
    MockGenerator,
    RemoteGenerator,
)
from kepr.infrastructure.backends.scorer import MockScorer, RemoteScorer, ScorerBackend

__all__ = [
    "LineChannel",
    "SocketChannel",
    "SubprocessChannel",
    "Embedder",
    "ReferenceEmbedder",
    "RemoteEmbedder",
    "GeneratorBackend",
    "MockGenerator",
    "RemoteGenerator",
    "MockScorer",
    "RemoteScorer",
    "ScorerBackend",
]
