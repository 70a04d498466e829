"""IDF tables and ranked keyword lists."""

import math
from typing import Dict, List

from pydantic import BaseModel, ConfigDict, Field, field_validator


class IdfTable(BaseModel):
    """Inverse document frequencies over a question corpus."""

    model_config = ConfigDict(frozen=True)

    idf: Dict[str, float] = Field(default_factory=dict)
    num_questions: int = Field(..., ge=1)

    @field_validator("idf")
    @classmethod
    def _non_negative(cls, idf: Dict[str, float]) -> Dict[str, float]:
        for token, value in idf.items():
            if value < 0 or not math.isfinite(value):
                raise ValueError(f"idf of {token!r} must be finite and >= 0, got {value}")
        return idf

    @property
    def unseen_idf(self) -> float:
        """IDF of a token that occurs in no corpus question (df = 0)."""
        return math.log(self.num_questions + 1) + 1.0

    def get(self, token: str) -> float:
        return self.idf.get(token, self.unseen_idf)


class Keyword(BaseModel):
    model_config = ConfigDict(frozen=True)

    token: str = Field(..., min_length=1)
    score: float


class KeywordList(BaseModel):
    """Top-m keywords of a question, best first."""

    model_config = ConfigDict(frozen=True)

    keywords: List[Keyword] = Field(default_factory=list)

    @field_validator("keywords")
    @classmethod
    def _ordered_and_unique(cls, keywords: List[Keyword]) -> List[Keyword]:
        tokens = [k.token for k in keywords]
        if len(set(tokens)) != len(tokens):
            raise ValueError("duplicate keywords")
        for prev, cur in zip(keywords, keywords[1:]):
            if cur.score > prev.score:
                raise ValueError("keyword scores must be non-increasing")
        return keywords

    @property
    def tokens(self) -> List[str]:
        return [k.token for k in self.keywords]

    def __len__(self) -> int:
        return len(self.keywords)
