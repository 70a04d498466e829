"""Dictionary index and retrieved knowledge."""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


class DictionaryIndex(BaseModel):
    """Exact-match lookup from lemma to its definitions in dump order."""

    model_config = ConfigDict(frozen=True)

    entries: Dict[str, List[str]] = Field(default_factory=dict)

    @field_validator("entries")
    @classmethod
    def _well_formed(cls, entries: Dict[str, List[str]]) -> Dict[str, List[str]]:
        for lemma, definitions in entries.items():
            if lemma != lemma.lower():
                raise ValueError(f"lemma {lemma!r} must be lowercase")
            if not definitions:
                raise ValueError(f"lemma {lemma!r} has no definitions")
        return entries

    def lookup(self, lemma: str) -> Optional[List[str]]:
        return self.entries.get(lemma)

    def __len__(self) -> int:
        return len(self.entries)


class KnowledgeItem(BaseModel):
    """A keyword with the definition selected for its question."""

    model_config = ConfigDict(frozen=True)

    keyword: str
    definition: str
    score: float

    def render(self) -> str:
        return f"{self.keyword}: {self.definition}"


class KnowledgeSet(BaseModel):
    """Knowledge items in keyword-rank order and their concatenation k_c."""

    model_config = ConfigDict(frozen=True)

    items: List[KnowledgeItem] = Field(default_factory=list)

    @property
    def rendered(self) -> str:
        return " ".join(item.render() for item in self.items)

    def __len__(self) -> int:
        return len(self.items)
