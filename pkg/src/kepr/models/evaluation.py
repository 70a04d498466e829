"""Evaluation policies, truncation schemes and reports."""

import re
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from kepr.models.lexicon import StopWordList, SynonymLexicon

PRIMARY_METRIC = "Inc@3"


class MatchMode(str, Enum):
    EXACT_NORMALIZED = "exact-normalized"
    SYNONYM_AUGMENTED = "synonym-augmented"


class MatchPolicy(BaseModel):
    """How a predicted answer is tested for membership in a gold cluster.

    Both modes compare content lemmas after removing ``stop_words``; the
    synonym-augmented mode also maps lemmas to their ``lexicon`` class.
    """

    model_config = ConfigDict(frozen=True)

    mode: MatchMode = MatchMode.EXACT_NORMALIZED
    stop_words: StopWordList = Field(default_factory=StopWordList)
    lexicon: Optional[SynonymLexicon] = None

    @model_validator(mode="after")
    def _lexicon_required(self) -> "MatchPolicy":
        if self.mode == MatchMode.SYNONYM_AUGMENTED and self.lexicon is None:
            raise ValueError("synonym-augmented matching requires a lexicon")
        return self


class TruncationKind(str, Enum):
    ANS_AT_K = "Ans"
    INC_AT_K = "Inc"


_SCHEME_NAME = re.compile(r"^(Ans|Inc)@(\d+)$", re.IGNORECASE)


class TruncationScheme(BaseModel):
    """Ans@k keeps the first k answers; Inc@k cuts before the k-th wrong one."""

    model_config = ConfigDict(frozen=True)

    kind: TruncationKind
    k: int = Field(..., ge=1)

    @property
    def name(self) -> str:
        return f"{self.kind.value}@{self.k}"

    @classmethod
    def parse(cls, name: str) -> "TruncationScheme":
        match = _SCHEME_NAME.match(name.strip())
        if not match:
            raise ValueError(f"unknown truncation scheme {name!r}, expected e.g. 'Inc@3'")
        is_ans = match.group(1).lower() == "ans"
        kind = TruncationKind.ANS_AT_K if is_ans else TruncationKind.INC_AT_K
        return cls(kind=kind, k=int(match.group(2)))


def standard_schemes() -> List[TruncationScheme]:
    """Ans@{1,3,5,10} and Inc@{1,3,5}."""
    return [TruncationScheme.parse(n) for n in
            ("Ans@1", "Ans@3", "Ans@5", "Ans@10", "Inc@1", "Inc@3", "Inc@5")]


class EvalReport(BaseModel):
    """Mean weighted accuracy per metric, with per-question detail."""

    model_config = ConfigDict(frozen=True)

    policy: MatchMode
    primary_metric: str = PRIMARY_METRIC
    per_metric: Dict[str, float] = Field(default_factory=dict)
    per_question: Dict[str, Dict[str, float]] = Field(default_factory=dict)
