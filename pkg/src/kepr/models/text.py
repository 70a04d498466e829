"""Token sequences and the text normalizer shared by every stage."""

from typing import List

from pydantic import BaseModel, ConfigDict, field_validator


class TokenSequence(BaseModel):
    """Ordered lowercase tokens of a normalized string."""

    model_config = ConfigDict(frozen=True)

    tokens: List[str]

    @field_validator("tokens")
    @classmethod
    def _tokens_are_clean(cls, tokens: List[str]) -> List[str]:
        for token in tokens:
            if not token or any(ch.isspace() for ch in token):
                raise ValueError(f"invalid token {token!r}")
        return tokens

    def joined(self) -> str:
        """Tokens re-joined with single spaces."""
        return " ".join(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)


def normalize_text(text: str) -> TokenSequence:
    """Lowercase, map every non-alphanumeric character to a space, split.

    Apostrophes count as punctuation, so "athlete's" becomes
    ["athlete", "s"].
    """
    lowered = text.lower()
    spaced = "".join(ch if ch.isalnum() else " " for ch in lowered)
    return TokenSequence(tokens=spaced.split())
