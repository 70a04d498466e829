"""Dictionary-based deduplication of answer candidates.

Answers reduce to a NormalForm: their content lemmas mapped to synonym
classes. "a bike", "her bikes" and (with the synset {bike, bicycle})
"the bicycle" all reduce to the same form, and only the most confident of
them survives.
"""

import logging
from typing import FrozenSet, List, Optional, Set

from kepr.core.lemmatizer import lemmatize
from kepr.models import Candidate, NormalForm, StopWordList, SynonymLexicon, normalize_text

logger = logging.getLogger(__name__)

DEFAULT_RETAIN = 12


def content_lemmas(answer: str, stop: StopWordList) -> FrozenSet[str]:
    """Lemmas of the answer's non-stop-word tokens."""
    return frozenset(lemmatize(t) for t in normalize_text(answer).tokens if t not in stop)


def normal_form(
    answer: str, stop: StopWordList, lex: Optional[SynonymLexicon] = None
) -> NormalForm:
    """Synonym-class ids of the answer's content lemmas; empty for answers of stop words only."""
    lemmas = content_lemmas(answer, stop)
    if lex is None:
        return lemmas
    return frozenset(lex.class_id(lemma) for lemma in lemmas)


def dedup(
    candidates: List[Candidate], stop: StopWordList, lex: SynonymLexicon
) -> List[Candidate]:
    """Keep the first (most confident) candidate of each NormalForm.

    Input must be sorted by confidence, highest first; the output is a
    subsequence of it. Candidates with an empty NormalForm are dropped.
    """
    seen: Set[NormalForm] = set()
    survivors: List[Candidate] = []
    for candidate in candidates:
        form = normal_form(candidate.text, stop, lex)
        if not form or form in seen:
            continue
        seen.add(form)
        survivors.append(candidate)

    if len(survivors) < len(candidates):
        logger.debug(f"Deduplicated {len(candidates)} candidates to {len(survivors)}")
    return survivors


def retain_top(candidates: List[Candidate], limit: int = DEFAULT_RETAIN) -> List[Candidate]:
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    return candidates[:limit]
