"""Ranker training data and plausibility ordering of generated answers."""

import logging
import math
from typing import Dict, List, Sequence, Tuple

import numpy as np

from kepr.core.dedup import normal_form
from kepr.exceptions import BackendError, DataError
from kepr.infrastructure.backends.scorer import ScorerBackend
from kepr.models import (
    Candidate,
    GroundTruthClusters,
    NormalForm,
    Question,
    RankerCorpus,
    RankerInstance,
    StopWordList,
    SynonymLexicon,
)

logger = logging.getLogger(__name__)

DEFAULT_POSITIVES = 2
DEFAULT_FINAL_COUNT = 10


def build_ranker_corpus(
    dataset: Sequence[Tuple[Question, GroundTruthClusters]],
    n: int,
    seed: int,
    stop: StopWordList,
    lex: SynonymLexicon,
) -> RankerCorpus:
    """Balanced positive/negative (question, answer) pairs.

    Positives are the first answer of each of the ``n`` heaviest clusters.
    Negatives are drawn uniformly without replacement from the gold answers
    of other questions, after removing answers whose NormalForm is empty or
    equals that of any gold answer of the target question. A question with
    fewer such answers than positives is skipped. Questions without clusters
    contribute nothing.

    Raises:
        DataError: If the dataset has fewer than two questions
        ValueError: If ``n`` is below 1
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if len(dataset) < 2:
        raise DataError("a ranker corpus needs at least two questions to sample negatives from")

    answers: List[str] = []
    owner_list: List[int] = []
    form_list: List[int] = []
    form_ids: Dict[NormalForm, int] = {}
    for position, (_, truth) in enumerate(dataset):
        for cluster in truth.clusters:
            for answer in cluster.answers:
                form = normal_form(answer, stop, lex)
                answers.append(answer)
                owner_list.append(position)
                # -1 marks an answer made only of stop words
                form_list.append(form_ids.setdefault(form, len(form_ids)) if form else -1)
    owners = np.array(owner_list, dtype=np.int64)
    forms = np.array(form_list, dtype=np.int64)
    rng = np.random.default_rng(seed)

    instances: List[RankerInstance] = []
    skipped: List[str] = []
    for position, (question, truth) in enumerate(dataset):
        if not truth.clusters:
            logger.debug(f"Question {question.id} has no answer clusters")
            continue

        positives = [cluster.answers[0] for cluster in truth.clusters[:n]]
        own = owners == position
        eligible = np.flatnonzero(~own & (forms >= 0) & ~np.isin(forms, forms[own]))
        if len(eligible) < len(positives):
            logger.warning(
                f"Skipping question {question.id}: {len(eligible)} non-synonymous "
                f"negatives for {len(positives)} positives"
            )
            skipped.append(question.id)
            continue
        picks = rng.choice(eligible, size=len(positives), replace=False)
        negatives = [answers[int(i)] for i in picks]

        for answer in positives:
            instances.append(
                RankerInstance(
                    question_id=question.id, question_text=question.text, answer=answer, label=1
                )
            )
        for answer in negatives:
            instances.append(
                RankerInstance(
                    question_id=question.id, question_text=question.text, answer=answer, label=0
                )
            )

    corpus = RankerCorpus(instances=instances, skipped_question_ids=skipped)
    logger.info(
        f"Built ranker corpus: {corpus.positives} positives, {corpus.negatives} negatives, "
        f"{len(skipped)} questions skipped"
    )
    return corpus


async def rank_answers(
    question: Question,
    candidates: List[Candidate],
    scorer: ScorerBackend,
    final_count: int = DEFAULT_FINAL_COUNT,
) -> List[Tuple[str, float]]:
    """Score candidates, sort by plausibility (ties keep input order), keep ``final_count``.

    With twelve retained candidates and the default ``final_count`` the two
    least plausible answers are dropped.

    Raises:
        BackendError: If the scorer returns the wrong number of scores or any
            score outside [0, 1]
    """
    if final_count < 1:
        raise ValueError(f"final_count must be >= 1, got {final_count}")
    if not candidates:
        return []

    answers = [c.text for c in candidates]
    scores = await scorer.score(question.text, answers)
    if len(scores) != len(answers):
        raise BackendError(scorer.name, f"returned {len(scores)} scores for {len(answers)} answers")
    for answer, score in zip(answers, scores):
        if not (math.isfinite(score) and 0.0 <= score <= 1.0):
            raise BackendError(scorer.name, f"score {score} for {answer!r} is outside [0, 1]")

    order = sorted(range(len(answers)), key=lambda i: -scores[i])
    return [(answers[i], float(scores[i])) for i in order[:final_count]]
