"""TF-IDF keyword extraction over a question corpus."""

import logging
import math
from collections import Counter
from typing import Iterable, List

from kepr.exceptions import DataError
from kepr.models import IdfTable, Keyword, KeywordList, Question, StopWordList, normalize_text

logger = logging.getLogger(__name__)

DEFAULT_KEYWORD_COUNT = 2


def content_tokens(text: str, stop_words: StopWordList) -> List[str]:
    """Normalized tokens of ``text`` with stop words removed, in order."""
    return [t for t in normalize_text(text).tokens if t not in stop_words]


def build_idf(questions: Iterable[Question], stop_words: StopWordList) -> IdfTable:
    """Smoothed IDF, ``ln((N + 1) / (df + 1)) + 1``, over distinct tokens per question.

    Raises:
        DataError: If there are no questions
    """
    document_frequency: Counter = Counter()
    num_questions = 0
    for question in questions:
        num_questions += 1
        document_frequency.update(set(content_tokens(question.text, stop_words)))

    if num_questions == 0:
        raise DataError("cannot build an IDF table from an empty question list")

    idf = {
        token: math.log((num_questions + 1) / (df + 1)) + 1.0
        for token, df in document_frequency.items()
    }
    logger.info(f"Built IDF table: {len(idf)} tokens over {num_questions} questions")
    return IdfTable(idf=idf, num_questions=num_questions)


def extract_keywords(
    question: Question,
    idf: IdfTable,
    m: int = DEFAULT_KEYWORD_COUNT,
    stop_words: StopWordList = StopWordList(),
) -> KeywordList:
    """Top-``m`` tokens of the question by ``tf * idf``.

    Ties go to the token that occurs first in the question. Tokens missing
    from the table get the unseen-token IDF.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")

    tokens = content_tokens(question.text, stop_words)
    term_frequency = Counter(tokens)
    first_position = {}
    for position, token in enumerate(tokens):
        first_position.setdefault(token, position)

    ranked = sorted(
        term_frequency,
        key=lambda t: (-term_frequency[t] * idf.get(t), first_position[t]),
    )
    return KeywordList(
        keywords=[Keyword(token=t, score=term_frequency[t] * idf.get(t)) for t in ranked[:m]]
    )
