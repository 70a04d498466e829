"""Lexical features of a (question, answer) pair for the reference scorer."""

from kepr.core.dedup import content_lemmas
from kepr.core.keywords import content_tokens
from kepr.models import FeatureVector, StopWordList, SynonymLexicon

FEATURE_NAMES = (
    "overlap",
    "overlap_ratio",
    "answer_tokens",
    "synonym_ratio",
    "answer_chars",
    "single_token",
)
FEATURE_DIM = len(FEATURE_NAMES)

_CHAR_SCALE = 32.0


def extract_features(
    question_text: str, answer: str, stop: StopWordList, lex: SynonymLexicon
) -> FeatureVector:
    """Six features, in ``FEATURE_NAMES`` order:

    1. distinct content lemmas shared by question and answer
    2. that overlap divided by the answer's content-token count
    3. the answer's content-token count
    4. fraction of the answer's distinct lemmas whose synonym class occurs in the question
    5. answer character length / 32
    6. 1.0 if the answer is a single content token, else 0.0
    """
    question_lemmas = content_lemmas(question_text, stop)
    answer_lemmas = content_lemmas(answer, stop)
    answer_tokens = len(content_tokens(answer, stop))

    overlap = len(question_lemmas & answer_lemmas)
    overlap_ratio = overlap / answer_tokens if answer_tokens else 0.0

    question_classes = {lex.class_id(lemma) for lemma in question_lemmas}
    synonym_hits = sum(1 for lemma in answer_lemmas if lex.class_id(lemma) in question_classes)
    synonym_ratio = synonym_hits / len(answer_lemmas) if answer_lemmas else 0.0

    return FeatureVector(
        values=[
            float(overlap),
            overlap_ratio,
            float(answer_tokens),
            synonym_ratio,
            len(answer.strip()) / _CHAR_SCALE,
            1.0 if answer_tokens == 1 else 0.0,
        ]
    )
