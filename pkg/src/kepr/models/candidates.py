"""Generator prompts and answer candidates."""

import math
from typing import List

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class MarkerSet(BaseModel):
    """The four special markers of the generator input layout."""

    model_config = ConfigDict(frozen=True)

    bos: str = Field(default="<BOS>", min_length=1)
    sep: str = Field(default="<SEP>", min_length=1)
    mask: str = Field(default="<MASK>", min_length=1)
    eos: str = Field(default="<EOS>", min_length=1)

    @model_validator(mode="after")
    def _pairwise_distinct(self) -> "MarkerSet":
        if len(set(self.as_list())) != 4:
            raise ValueError("markers must be pairwise distinct")
        return self

    def as_list(self) -> List[str]:
        return [self.bos, self.sep, self.mask, self.eos]


class Prompt(BaseModel):
    """Generator input: BOS k_c SEP rewritten-question MASK EOS."""

    model_config = ConfigDict(frozen=True)

    text: str
    markers: MarkerSet


class RawCandidate(BaseModel):
    """An answer as returned by a generator backend."""

    model_config = ConfigDict(frozen=True)

    text: str
    token_logprobs: List[float]

    @field_validator("token_logprobs")
    @classmethod
    def _finite(cls, logprobs: List[float]) -> List[float]:
        if any(not math.isfinite(lp) for lp in logprobs):
            raise ValueError("token log-probabilities must be finite")
        return logprobs


class Candidate(BaseModel):
    """An answer with its confidence, the sum of its token log-probabilities."""

    model_config = ConfigDict(frozen=True)

    text: str
    confidence: float = Field(..., le=0.0)
