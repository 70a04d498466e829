"""Unit tests for in-process backends and backend construction"""

import json

import numpy as np
import pytest

from kepr.config import PipelineConfig
from kepr.core.logistic import LogisticScorer
from kepr.exceptions import BackendError, ConfigError, DataError
from kepr.infrastructure.backends import (
    MockGenerator,
    MockScorer,
    ReferenceEmbedder,
    RemoteEmbedder,
    RemoteGenerator,
    RemoteScorer,
    SocketChannel,
    SubprocessChannel,
)
from kepr.infrastructure.backends.embedder import bucket
from kepr.infrastructure.backends.factory import create_embedder, create_generator, create_scorer
from kepr.infrastructure.backends.generator import parse_candidates
from kepr.infrastructure.persistence import write_model
from kepr.models import LogisticModel, StopWordList


@pytest.mark.unit
class TestMockGenerator:
    """Test fixture-driven generation"""

    async def test_first_match_wins(self):
        generator = MockGenerator(
            [
                {"match": "monk", "candidates": [{"text": "car", "token_logprobs": [-0.1]}]},
                {"match": "monk own", "candidates": [{"text": "gun", "token_logprobs": [-0.1]}]},
            ],
            default=[{"text": "toys", "token_logprobs": [-0.5]}],
        )
        [first] = await generator.request("a monk own", 5, 3)
        assert first.text == "car"
        [fallback] = await generator.request("a house", 5, 3)
        assert fallback.text == "toys"

    async def test_truncated_to_beam_width(self, fixtures_dir):
        generator = MockGenerator.from_fixture(fixtures_dir / "mock_generator.json")
        candidates = await generator.request("athlete would not keep in her refrigerator", 4, 3)
        assert [c.text for c in candidates] == ["beer", "ice cream", "chocolate", "beers"]

    async def test_no_match_no_default(self):
        assert await MockGenerator([]).request("anything", 3, 3) == []

    def test_missing_fixture(self, tmp_path):
        with pytest.raises(DataError):
            MockGenerator.from_fixture(tmp_path / "absent.json")

    def test_invalid_fixture(self, tmp_path):
        path = tmp_path / "gen.json"
        path.write_text('{"responses": [{"candidates": []}]}', encoding="utf-8")
        with pytest.raises(DataError):
            MockGenerator.from_fixture(path)

    def test_parse_candidates_rejects_malformed(self):
        with pytest.raises(BackendError):
            parse_candidates("gen", {"text": "beer"})
        with pytest.raises(BackendError):
            parse_candidates("gen", [{"text": "beer"}])


@pytest.mark.unit
class TestMockScorer:
    """Test fixture-driven scoring"""

    async def test_default_constant(self):
        assert await MockScorer().score("q", ["a", "b"]) == [0.5, 0.5]

    async def test_lookup_case_insensitive(self, tmp_path):
        path = tmp_path / "scores.json"
        path.write_text(json.dumps({"scores": {"Beer": 0.9}, "default": 0.2}), encoding="utf-8")
        scorer = MockScorer.from_fixture(path)
        assert await scorer.score("q", ["beer", "cake"]) == [0.9, 0.2]

    def test_invalid_fixture(self, tmp_path):
        path = tmp_path / "scores.json"
        path.write_text('{"scores": {"beer": "high"}}', encoding="utf-8")
        with pytest.raises(DataError):
            MockScorer.from_fixture(path)


@pytest.mark.unit
class TestReferenceEmbedder:
    """Test the hashed bag-of-lemmas embedder"""

    def test_counts_content_lemmas(self):
        stop = StopWordList(words=frozenset({"the", "and"}))
        embedder = ReferenceEmbedder(stop, dim=64)
        vector = embedder.vector("the bikes and the bike")
        assert vector[bucket("bike", 64)] == 2.0
        assert vector.sum() == 2.0

    def test_bucket_is_stable(self):
        assert bucket("monk", 256) == bucket("monk", 256)
        assert 0 <= bucket("monk", 7) < 7

    async def test_embed_shapes(self, stop_words):
        vectors = await ReferenceEmbedder(stop_words, dim=32).embed(["a monk", "", "an athlete"])
        assert [v.shape for v in vectors] == [(32,)] * 3
        assert not np.any(vectors[1])

    def test_invalid_dim(self, stop_words):
        with pytest.raises(ValueError):
            ReferenceEmbedder(stop_words, dim=0)


@pytest.mark.unit
class TestFactory:
    """Test backend selection from configuration"""

    def test_mock_generator_needs_fixture(self):
        with pytest.raises(ConfigError):
            create_generator(PipelineConfig())

    def test_mock_generator(self, fixtures_dir):
        config = PipelineConfig(generator_fixture=fixtures_dir / "mock_generator.json")
        assert isinstance(create_generator(config), MockGenerator)

    def test_remote_kinds(self):
        config = PipelineConfig(
            generator_kind="subprocess",
            generator_endpoint="python backend.py",
            scorer_kind="socket",
            scorer_endpoint="127.0.0.1:7001",
            embedder_kind="socket",
            embedder_endpoint="unix:/tmp/embed.sock",
            embedder_dim=8,
        )
        generator = create_generator(config)
        scorer = create_scorer(config, StopWordList(), None)
        embedder = create_embedder(config, StopWordList())
        assert isinstance(generator, RemoteGenerator)
        assert isinstance(generator.channel, SubprocessChannel)
        assert isinstance(scorer, RemoteScorer)
        assert isinstance(scorer.channel, SocketChannel)
        assert isinstance(embedder, RemoteEmbedder)
        assert embedder.dim == 8

    def test_scorer_precedence(self, tmp_path, stop_words, lexicon):
        """Mock scorer: fixture first, then trained model, then constant"""
        model_path = tmp_path / "model.json"
        write_model(LogisticModel(weights=[0.0] * 6), model_path)
        fixture = tmp_path / "scores.json"
        fixture.write_text('{"scores": {}}', encoding="utf-8")

        assert isinstance(create_scorer(PipelineConfig(), stop_words, lexicon), MockScorer)
        with_model = PipelineConfig(model=model_path)
        assert isinstance(create_scorer(with_model, stop_words, lexicon), LogisticScorer)
        with_both = PipelineConfig(model=model_path, scorer_fixture=fixture)
        assert isinstance(create_scorer(with_both, stop_words, lexicon), MockScorer)

    def test_mock_embedder_dimension(self, stop_words):
        embedder = create_embedder(PipelineConfig(embedder_dim=16), stop_words)
        assert isinstance(embedder, ReferenceEmbedder)
        assert embedder.dim == 16
