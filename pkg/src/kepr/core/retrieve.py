"""Dictionary lookup and context-aware definition selection.

Each keyword is lemmatized and looked up in the dictionary index. When the
lemma has several senses, the query "What is the meaning of word <keyword>
in the sentence <question>?" and every definition are embedded, and the
definition with the highest scalar product wins.
"""

import logging
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import numpy as np

from kepr.core.lemmatizer import lemmatize
from kepr.config.pipeline import DefinitionSelection, Similarity
from kepr.exceptions import BackendError, DataError
from kepr.infrastructure.backends.embedder import Embedder
from kepr.infrastructure.persistence import iter_records
from kepr.models import DictionaryIndex, KeywordList, KnowledgeItem, KnowledgeSet, Question

logger = logging.getLogger(__name__)

__all__ = [
    "lemmatize",
    "build_index",
    "make_query",
    "select_by_vectors",
    "select_definition",
    "retrieve_knowledge",
]

QUERY_TEMPLATE = "What is the meaning of word {keyword} in the sentence {question}?"


def build_index(dump_path: Path) -> DictionaryIndex:
    """Index a dump of ``{"lemma", "definitions"}`` lines.

    Repeated lemmas append their definitions in file order.

    Raises:
        DataError: On a malformed line, naming its line number
    """
    entries: Dict[str, List[str]] = {}
    for line_number, record in iter_records(dump_path):
        lemma = record.get("lemma")
        definitions = record.get("definitions")
        if not isinstance(lemma, str) or not lemma.strip():
            raise DataError(f"{dump_path}:{line_number}: 'lemma' must be a non-empty string")
        if not isinstance(definitions, list) or not all(isinstance(d, str) for d in definitions):
            raise DataError(f"{dump_path}:{line_number}: 'definitions' must be a list of strings")
        if not definitions:
            continue
        entries.setdefault(lemma.strip().lower(), []).extend(definitions)

    logger.info(f"Indexed {len(entries)} lemmas from {dump_path}")
    return DictionaryIndex(entries=entries)


def make_query(keyword: str, question: Question) -> str:
    return QUERY_TEMPLATE.format(keyword=keyword, question=question.text)


def _check_dim(embedder: Embedder, vectors: Sequence[np.ndarray]) -> None:
    for vector in vectors:
        if vector.shape != (embedder.dim,):
            raise BackendError(
                embedder.name,
                f"embedding has length {vector.shape[0] if vector.ndim else 0}, "
                f"expected {embedder.dim}",
            )


def select_by_vectors(
    query: np.ndarray,
    definitions: Sequence[np.ndarray],
    similarity: Similarity = Similarity.DOT,
) -> Tuple[int, float]:
    """Argmax of the query's similarity to each definition; ties go to the lowest index.

    Cosine similarity treats a zero vector as similarity 0.
    """
    if not definitions:
        raise ValueError("definitions must not be empty")
    matrix = np.vstack(definitions)
    scores = matrix @ query
    if similarity == Similarity.COSINE:
        norms = np.linalg.norm(matrix, axis=1) * np.linalg.norm(query)
        scores = np.divide(scores, norms, out=np.zeros_like(scores), where=norms > 0)
    best = int(np.argmax(scores))
    return best, float(scores[best])


async def select_definition(
    query: str,
    definitions: Sequence[str],
    embedder: Embedder,
    similarity: Similarity = Similarity.DOT,
) -> Tuple[int, float]:
    """Index and score of the definition most relevant to ``query``.

    Raises:
        ValueError: If ``definitions`` is empty
        BackendError: If the embedder returns a vector of the wrong length
    """
    if not definitions:
        raise ValueError("definitions must not be empty")
    vectors = await embedder.embed([query, *definitions])
    if len(vectors) != len(definitions) + 1:
        raise BackendError(
            embedder.name, f"returned {len(vectors)} vectors for {len(definitions) + 1} texts"
        )
    _check_dim(embedder, vectors)
    return select_by_vectors(vectors[0], vectors[1:], similarity)


async def retrieve_knowledge(
    question: Question,
    keywords: KeywordList,
    index: DictionaryIndex,
    embedder: Embedder,
    selection: DefinitionSelection = DefinitionSelection.DENSE,
    similarity: Similarity = Similarity.DOT,
) -> KnowledgeSet:
    """One knowledge item per keyword found in the index, in keyword-rank order.

    With ``selection=PRIMARY`` the first-listed definition is taken without
    consulting the embedder, and its score is 0.
    """
    items: List[KnowledgeItem] = []
    for keyword in keywords.tokens:
        definitions = index.lookup(lemmatize(keyword))
        if not definitions:
            logger.debug(f"No dictionary entry for keyword {keyword!r} of question {question.id}")
            continue

        if selection == DefinitionSelection.PRIMARY:
            chosen, score = 0, 0.0
        else:
            chosen, score = await select_definition(
                make_query(keyword, question), definitions, embedder, similarity
            )
        items.append(KnowledgeItem(keyword=keyword, definition=definitions[chosen], score=score))

    return KnowledgeSet(items=items)
