"""Question rewriting rules and their output."""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


class RewriteHead(str, Enum):
    """Heads a question prefix may be rewritten to."""

    ONE = "one"
    ONE_THING = "one thing"
    ONE_WAY_TO_TELL = "one way to tell"


class RewriteRule(BaseModel):
    """Maps a question prefix to a Cloze head."""

    model_config = ConfigDict(frozen=True)

    prefix: str = Field(..., min_length=1)
    head: RewriteHead

    @field_validator("prefix")
    @classmethod
    def _lowercase_prefix(cls, prefix: str) -> str:
        prefix = " ".join(prefix.split())
        if prefix != prefix.lower() or not prefix:
            raise ValueError(f"rule prefix must be lowercase and non-empty, got {prefix!r}")
        return prefix


class RewrittenQuestion(BaseModel):
    """A question rewritten into a Cloze-style statement."""

    model_config = ConfigDict(frozen=True)

    text: str
    matched_prefix: Optional[str] = None
    content: str
