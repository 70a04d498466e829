"""Ranker training data and the reference logistic model."""

import math
from typing import List

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

FEATURE_VERSION = "lexical-v1"


class RankerInstance(BaseModel):
    """A (question, answer, label) training pair for the plausibility scorer."""

    model_config = ConfigDict(frozen=True)

    question_id: str = Field(..., min_length=1)
    question_text: str
    answer: str
    label: int = Field(..., ge=0, le=1)


class RankerCorpus(BaseModel):
    """Balanced ranker training instances plus the questions that were skipped."""

    model_config = ConfigDict(frozen=True)

    instances: List[RankerInstance] = Field(default_factory=list)
    skipped_question_ids: List[str] = Field(default_factory=list)

    @property
    def positives(self) -> int:
        return sum(1 for i in self.instances if i.label == 1)

    @property
    def negatives(self) -> int:
        return sum(1 for i in self.instances if i.label == 0)


class FeatureVector(BaseModel):
    """Fixed-dimension lexical features of a (question, answer) pair."""

    model_config = ConfigDict(frozen=True)

    values: List[float]

    @field_validator("values")
    @classmethod
    def _finite(cls, values: List[float]) -> List[float]:
        if any(not math.isfinite(v) for v in values):
            raise ValueError("feature values must be finite")
        return values

    def __len__(self) -> int:
        return len(self.values)


class LogisticModel(BaseModel):
    """Linear discriminator with a sigmoid output."""

    model_config = ConfigDict(frozen=True)

    weights: List[float]
    bias: float = 0.0
    feature_version: str = FEATURE_VERSION

    @model_validator(mode="after")
    def _finite(self) -> "LogisticModel":
        if any(not math.isfinite(w) for w in self.weights) or not math.isfinite(self.bias):
            raise ValueError("model parameters must be finite")
        return self


class TrainingResult(BaseModel):
    """A trained model and its mean BCE loss before each epoch's update."""

    model_config = ConfigDict(frozen=True)

    model: LogisticModel
    loss_trace: List[float] = Field(default_factory=list)
