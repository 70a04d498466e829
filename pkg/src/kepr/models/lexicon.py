"""Stop words, synonym classes and answer normal forms."""

from typing import Dict, FrozenSet, Iterable, List

from pydantic import BaseModel, ConfigDict, Field

NormalForm = FrozenSet[str]
"""Synonym-class identifiers of an answer's content lemmas."""


class StopWordList(BaseModel):
    """Lowercase function words ignored by keyword extraction and matching."""

    model_config = ConfigDict(frozen=True)

    words: FrozenSet[str] = Field(default_factory=frozenset)

    def __contains__(self, token: object) -> bool:
        return token in self.words

    def __len__(self) -> int:
        return len(self.words)


class SynonymLexicon(BaseModel):
    """Synsets merged transitively into synonym classes.

    A class is identified by its lexicographically smallest lemma. Lemmas
    absent from every synset are singleton classes named by themselves.
    Build instances with :meth:`from_synsets`.
    """

    model_config = ConfigDict(frozen=True)

    synsets: List[FrozenSet[str]] = Field(default_factory=list)
    class_of: Dict[str, str] = Field(default_factory=dict)

    @classmethod
    def from_synsets(cls, synsets: Iterable[Iterable[str]]) -> "SynonymLexicon":
        parent: Dict[str, str] = {}

        def find(lemma: str) -> str:
            root = lemma
            while parent[root] != root:
                root = parent[root]
            while parent[lemma] != root:
                parent[lemma], lemma = root, parent[lemma]
            return root

        cleaned: List[FrozenSet[str]] = []
        for synset in synsets:
            members = frozenset(lemma.lower() for lemma in synset if lemma)
            if not members:
                continue
            cleaned.append(members)
            for lemma in members:
                parent.setdefault(lemma, lemma)
            first, *rest = sorted(members)
            for lemma in rest:
                a, b = find(first), find(lemma)
                if a != b:
                    # Smaller root wins so the class id is the smallest lemma.
                    parent[max(a, b)] = min(a, b)

        class_of = {lemma: find(lemma) for lemma in parent}
        return cls(synsets=cleaned, class_of=class_of)

    @classmethod
    def empty(cls) -> "SynonymLexicon":
        return cls()

    def class_id(self, lemma: str) -> str:
        return self.class_of.get(lemma, lemma)
