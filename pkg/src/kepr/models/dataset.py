"""Questions, ground-truth answer clusters and predictions."""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from kepr.models.text import normalize_text


class Question(BaseModel):
    """A prototypical question."""

    model_config = ConfigDict(frozen=True)

    id: str = Field(..., min_length=1)
    text: str = Field(..., min_length=1)


class AnswerCluster(BaseModel):
    """A class of equivalent gold answers with its crowd-sourced vote count."""

    model_config = ConfigDict(frozen=True)

    label: Optional[str] = None
    weight: int = Field(..., ge=1)
    answers: List[str] = Field(..., min_length=1)

    @field_validator("answers")
    @classmethod
    def _no_duplicate_answers(cls, answers: List[str]) -> List[str]:
        seen = set()
        for answer in answers:
            key = normalize_text(answer).joined()
            if key in seen:
                raise ValueError(f"duplicate answer {answer!r} in cluster")
            seen.add(key)
        return answers


class GroundTruthClusters(BaseModel):
    """Weighted answer clusters of one question, heaviest first.

    Clusters are sorted on construction; equal weights keep their input order.
    """

    model_config = ConfigDict(frozen=True)

    question_id: str = Field(..., min_length=1)
    clusters: List[AnswerCluster] = Field(default_factory=list)

    @field_validator("clusters")
    @classmethod
    def _sort_by_weight(cls, clusters: List[AnswerCluster]) -> List[AnswerCluster]:
        return sorted(clusters, key=lambda c: -c.weight)

    @property
    def weights(self) -> List[int]:
        return [c.weight for c in self.clusters]


class QuestionFailure(BaseModel):
    """A question the pipeline gave up on, and the stage that failed."""

    model_config = ConfigDict(frozen=True)

    question_id: str
    stage: str
    error: str


class Prediction(BaseModel):
    """A ranked answer list submitted for one question."""

    model_config = ConfigDict(frozen=True)

    question_id: str = Field(..., min_length=1)
    ranked_answers: List[str] = Field(default_factory=list)

    @field_validator("ranked_answers")
    @classmethod
    def _no_duplicate_answers(cls, answers: List[str]) -> List[str]:
        seen = set()
        for answer in answers:
            key = normalize_text(answer).joined()
            if key in seen:
                raise ValueError(f"duplicate ranked answer {answer!r}")
            seen.add(key)
        return answers
