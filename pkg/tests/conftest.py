"""Shared pytest fixtures."""

import shlex
import sys
from pathlib import Path

import pytest

from kepr.infrastructure.persistence import load_lexicon, load_stop_words
from kepr.models import AnswerCluster, GroundTruthClusters, StopWordList, SynonymLexicon

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def stop_words() -> StopWordList:
    """Bundled stop-word list."""
    return load_stop_words()


@pytest.fixture(scope="session")
def lexicon() -> SynonymLexicon:
    """Bundled synonym lexicon."""
    return load_lexicon()


@pytest.fixture
def bike_lexicon() -> SynonymLexicon:
    return SynonymLexicon.from_synsets([["bike", "bicycle"]])


@pytest.fixture
def athlete_clusters() -> GroundTruthClusters:
    """Gold clusters of "Name something that an athlete would not keep in her refrigerator"."""
    return GroundTruthClusters(
        question_id="q1",
        clusters=[
            AnswerCluster(label="unhealthy food", weight=36, answers=["chocolate", "junk food"]),
            AnswerCluster(label="unhealthy drinks", weight=24, answers=["coke", "alcohol"]),
            AnswerCluster(label="clothing/shoes", weight=24, answers=["gloves", "clothes"]),
            AnswerCluster(label="accessories", weight=7, answers=["handbag", "medal"]),
        ],
    )


@pytest.fixture
def backend_command():
    """Command line that starts the line-protocol test backend in a given mode."""

    def command(mode: str, *extra: str) -> str:
        return shlex.join([sys.executable, str(FIXTURES / "mock_backend.py"), mode, *extra])

    return command
