"""Generator backends.

Implementations:
- MockGenerator: canned candidates from a fixture file
- RemoteGenerator: any model served over a LineChannel
"""

import json
import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from kepr.exceptions import BackendError, DataError
from kepr.infrastructure.backends.channel import LineChannel
from kepr.models import RawCandidate

logger = logging.getLogger(__name__)


class GeneratorBackend(ABC):
    """Produces answer candidates with per-token log-probabilities for a prompt."""

    name: str = "generator"

    @abstractmethod
    async def request(
        self, prompt: str, beam_width: int, max_tokens: int
    ) -> List[RawCandidate]:
        """
        Generate candidates for ``prompt``.

        Args:
            prompt: Full generator input text
            beam_width: Maximum number of candidates to return
            max_tokens: Maximum answer length in tokens

        Returns:
            At most ``beam_width`` candidates

        Raises:
            BackendError: If the backend fails or answers malformed data
        """

    async def aclose(self) -> None:
        """Release backend resources."""


def parse_candidates(backend: str, payload: Any) -> List[RawCandidate]:
    """Validate a ``[{"text", "token_logprobs"}, ...]`` list."""
    if not isinstance(payload, list):
        raise BackendError(backend, "malformed response: 'candidates' must be a list")
    try:
        return [RawCandidate(**item) for item in payload]
    except (TypeError, ValidationError) as e:
        raise BackendError(backend, f"malformed candidate: {e}") from e


class MockGenerator(GeneratorBackend):
    """Answers from a fixture mapping prompt substrings to canned candidates.

    Fixture layout::

        {"responses": [{"match": "<substring>", "candidates": [...]}, ...],
         "default": [...]}

    The first entry whose ``match`` occurs in the prompt wins; otherwise the
    optional ``default`` list is returned.
    """

    def __init__(
        self,
        responses: List[Dict[str, Any]],
        default: Optional[List[Dict[str, Any]]] = None,
        name: str = "mock-generator",
    ):
        self.name = name
        self._responses = [
            (entry["match"], parse_candidates(name, entry["candidates"])) for entry in responses
        ]
        self._default = parse_candidates(name, default or [])

    @classmethod
    def from_fixture(cls, path: Path) -> "MockGenerator":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
            return cls(data.get("responses", []), data.get("default"))
        except OSError as e:
            raise DataError(f"cannot read generator fixture {path}: {e}") from e
        except (json.JSONDecodeError, KeyError, AttributeError) as e:
            raise DataError(f"invalid generator fixture {path}: {e}") from e

    async def request(
        self, prompt: str, beam_width: int, max_tokens: int
    ) -> List[RawCandidate]:
        for match, candidates in self._responses:
            if match in prompt:
                return candidates[:beam_width]
        return self._default[:beam_width]


class RemoteGenerator(GeneratorBackend):
    """Request ``{"prompt", "beam_width", "max_tokens"}``, reply ``{"candidates": [...]}``."""

    def __init__(self, channel: LineChannel):
        self.channel = channel
        self.name = channel.name

    async def request(
        self, prompt: str, beam_width: int, max_tokens: int
    ) -> List[RawCandidate]:
        reply = await self.channel.request(
            {"prompt": prompt, "beam_width": beam_width, "max_tokens": max_tokens}
        )
        if "candidates" not in reply:
            raise BackendError(self.name, "malformed response: missing 'candidates'")
        return parse_candidates(self.name, reply["candidates"])

    async def aclose(self) -> None:
        await self.channel.aclose()
