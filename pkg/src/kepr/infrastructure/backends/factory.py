"""Backend construction from a PipelineConfig."""

import logging

from kepr.config.pipeline import BackendEndpoint, BackendKind, PipelineConfig
from kepr.core.logistic import LogisticScorer
from kepr.exceptions import ConfigError
from kepr.infrastructure.backends.channel import LineChannel, SocketChannel, SubprocessChannel
from kepr.infrastructure.backends.embedder import Embedder, ReferenceEmbedder, RemoteEmbedder
from kepr.infrastructure.backends.generator import GeneratorBackend, MockGenerator, RemoteGenerator
from kepr.infrastructure.backends.scorer import MockScorer, RemoteScorer, ScorerBackend
from kepr.infrastructure.persistence import load_model
from kepr.models import StopWordList, SynonymLexicon

logger = logging.getLogger(__name__)


def make_channel(endpoint: BackendEndpoint) -> LineChannel:
    assert endpoint.endpoint is not None
    if endpoint.kind == BackendKind.SUBPROCESS:
        return SubprocessChannel(endpoint.name, endpoint.endpoint, endpoint.pipelining)
    return SocketChannel(endpoint.name, endpoint.endpoint, endpoint.pipelining)


def create_generator(config: PipelineConfig) -> GeneratorBackend:
    """Mock generators need ``generator_fixture``; others talk over a channel."""
    endpoint = config.backend("generator")
    if endpoint.kind != BackendKind.MOCK:
        logger.info(f"Generator backend: {endpoint.kind.value} {endpoint.endpoint}")
        return RemoteGenerator(make_channel(endpoint))
    if endpoint.fixture is None:
        raise ConfigError("a mock generator needs 'generator_fixture'")
    return MockGenerator.from_fixture(config.require("generator_fixture"))


def create_scorer(
    config: PipelineConfig, stop: StopWordList, lex: SynonymLexicon
) -> ScorerBackend:
    """Pick the scorer for a run.

    Mock kind resolves in this order: ``scorer_fixture``, a trained
    ``model`` (the in-process logistic scorer), then a constant 0.5.
    """
    endpoint = config.backend("scorer")
    if endpoint.kind != BackendKind.MOCK:
        logger.info(f"Scorer backend: {endpoint.kind.value} {endpoint.endpoint}")
        return RemoteScorer(make_channel(endpoint))
    if config.scorer_fixture is not None:
        return MockScorer.from_fixture(config.require("scorer_fixture"))
    if config.model is not None:
        return LogisticScorer(load_model(config.require("model")), stop, lex)
    return MockScorer()


def create_embedder(config: PipelineConfig, stop: StopWordList) -> Embedder:
    """Mock kind is the in-process reference embedder."""
    endpoint = config.backend("embedder")
    if endpoint.kind != BackendKind.MOCK:
        logger.info(f"Embedder backend: {endpoint.kind.value} {endpoint.endpoint}")
        return RemoteEmbedder(make_channel(endpoint), config.embedder_dim)
    return ReferenceEmbedder(stop, dim=config.embedder_dim)
