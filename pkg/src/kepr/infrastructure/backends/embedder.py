"""Sentence embedders for definition selection.

Implementations:
- ReferenceEmbedder: hashed bag of content lemmas, deterministic
- RemoteEmbedder: any encoder served over a LineChannel
"""

import hashlib
import logging
from abc import ABC, abstractmethod
from typing import List

import numpy as np

from kepr.core.lemmatizer import lemmatize
from kepr.exceptions import BackendError
from kepr.infrastructure.backends.channel import LineChannel
from kepr.models import StopWordList, normalize_text

logger = logging.getLogger(__name__)

REFERENCE_DIM = 256


class Embedder(ABC):
    """Maps texts to fixed-length real vectors."""

    name: str = "embedder"
    dim: int

    @abstractmethod
    async def embed(self, texts: List[str]) -> List[np.ndarray]:
        """
        Embed every text.

        Returns:
            One vector per text; callers check that each has length ``dim``

        Raises:
            BackendError: If the backend fails or answers malformed data
        """

    async def aclose(self) -> None:
        """Release backend resources."""


def bucket(lemma: str, dim: int) -> int:
    """Stable hash bucket of a lemma."""
    digest = hashlib.blake2b(lemma.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big") % dim


class ReferenceEmbedder(Embedder):
    """Count vector of content lemmas hashed into ``dim`` buckets.

    The dot product of two embeddings counts shared lemmas (up to hash
    collisions), which keeps definition selection checkable by hand.
    """

    def __init__(self, stop_words: StopWordList, dim: int = REFERENCE_DIM):
        if dim < 1:
            raise ValueError(f"dim must be >= 1, got {dim}")
        self.name = "reference-embedder"
        self.dim = dim
        self.stop_words = stop_words

    def vector(self, text: str) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=np.float64)
        for token in normalize_text(text).tokens:
            if token in self.stop_words:
                continue
            vec[bucket(lemmatize(token), self.dim)] += 1.0
        return vec

    async def embed(self, texts: List[str]) -> List[np.ndarray]:
        return [self.vector(t) for t in texts]


class RemoteEmbedder(Embedder):
    """Request ``{"texts": [...]}``, reply ``{"vectors": [[...], ...]}``."""

    def __init__(self, channel: LineChannel, dim: int):
        self.channel = channel
        self.name = channel.name
        self.dim = dim

    async def embed(self, texts: List[str]) -> List[np.ndarray]:
        reply = await self.channel.request({"texts": texts})
        vectors = reply.get("vectors")
        if not isinstance(vectors, list) or len(vectors) != len(texts):
            raise BackendError(self.name, f"malformed response: expected {len(texts)} vectors")
        try:
            return [np.asarray(v, dtype=np.float64).reshape(-1) for v in vectors]
        except (TypeError, ValueError) as e:
            raise BackendError(self.name, f"malformed vector: {e}") from e

    async def aclose(self) -> None:
        await self.channel.aclose()
