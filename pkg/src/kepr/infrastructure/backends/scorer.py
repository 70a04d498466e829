"""Plausibility scorer backends.

Implementations:
- MockScorer: constant score, or per-answer scores from a fixture
- RemoteScorer: any model served over a LineChannel
- LogisticScorer (kepr.core.logistic): the reference lexical-feature model
"""

import json
import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, List, Optional

from kepr.exceptions import BackendError, DataError
from kepr.infrastructure.backends.channel import LineChannel

logger = logging.getLogger(__name__)


class ScorerBackend(ABC):
    """Rates answers of a question with a plausibility in [0, 1]."""

    name: str = "scorer"

    @abstractmethod
    async def score(self, question: str, answers: List[str]) -> List[float]:
        """
        Score every answer of ``question``.

        Returns:
            One score per answer, in answer order

        Raises:
            BackendError: If the backend fails or answers malformed data
        """

    async def aclose(self) -> None:
        """Release backend resources."""


class MockScorer(ScorerBackend):
    """Fixture scores by answer text (case-insensitive); ``default`` otherwise."""

    def __init__(
        self,
        scores: Optional[Dict[str, float]] = None,
        default: float = 0.5,
        name: str = "mock-scorer",
    ):
        self.name = name
        self.default = default
        self._scores = {k.lower(): float(v) for k, v in (scores or {}).items()}

    @classmethod
    def from_fixture(cls, path: Path) -> "MockScorer":
        """Fixture layout: ``{"scores": {"<answer>": <score>, ...}, "default": 0.5}``."""
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
            return cls(data.get("scores", {}), float(data.get("default", 0.5)))
        except OSError as e:
            raise DataError(f"cannot read scorer fixture {path}: {e}") from e
        except (json.JSONDecodeError, AttributeError, TypeError, ValueError) as e:
            raise DataError(f"invalid scorer fixture {path}: {e}") from e

    async def score(self, question: str, answers: List[str]) -> List[float]:
        return [self._scores.get(a.lower(), self.default) for a in answers]


class RemoteScorer(ScorerBackend):
    """Request ``{"question", "answers"}``, reply ``{"scores": [...]}``."""

    def __init__(self, channel: LineChannel):
        self.channel = channel
        self.name = channel.name

    async def score(self, question: str, answers: List[str]) -> List[float]:
        reply = await self.channel.request({"question": question, "answers": answers})
        scores = reply.get("scores")
        if not isinstance(scores, list) or len(scores) != len(answers):
            raise BackendError(
                self.name, f"malformed response: expected {len(answers)} scores, got {scores!r}"
            )
        try:
            return [float(s) for s in scores]
        except (TypeError, ValueError) as e:
            raise BackendError(self.name, f"malformed score: {e}") from e

    async def aclose(self) -> None:
        await self.channel.aclose()
