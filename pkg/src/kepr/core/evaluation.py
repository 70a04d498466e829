"""Weighted-accuracy evaluation of ranked answer lists.

An answer earns the weight of the first (heaviest) cluster it matches, and
each cluster is credited at most once. The score of a truncated list of
length L is the earned weight over the sum of the L heaviest cluster
weights, where positions beyond the number of clusters add nothing to the
ideal.
"""

import logging
from typing import Dict, List, Optional, Sequence

from kepr.core.dedup import normal_form
from kepr.exceptions import DataError
from kepr.models import (
    EvalReport,
    GroundTruthClusters,
    KeywordList,
    MatchMode,
    MatchPolicy,
    NormalForm,
    Prediction,
    TruncationKind,
    TruncationScheme,
    standard_schemes,
)

logger = logging.getLogger(__name__)

Matches = List[Optional[int]]


def answer_key(answer: str, policy: MatchPolicy) -> NormalForm:
    """Lemma set (exact-normalized) or synonym-class set (synonym-augmented) of an answer."""
    lexicon = policy.lexicon if policy.mode == MatchMode.SYNONYM_AUGMENTED else None
    return normal_form(answer, policy.stop_words, lexicon)


class ClusterMatcher:
    """Matches answers against one question's clusters, with gold keys computed once."""

    def __init__(self, clusters: GroundTruthClusters, policy: MatchPolicy):
        self.clusters = clusters
        self.policy = policy
        self._gold = [
            {answer_key(answer, policy) for answer in cluster.answers}
            for cluster in clusters.clusters
        ]

    def match(self, answer: str) -> Optional[int]:
        key = answer_key(answer, self.policy)
        if not key:
            return None
        for index, keys in enumerate(self._gold):
            if key in keys:
                return index
        return None

    def match_all(self, answers: Sequence[str]) -> Matches:
        return [self.match(a) for a in answers]


def match_answer(
    answer: str, clusters: GroundTruthClusters, policy: MatchPolicy
) -> Optional[int]:
    """Index of the heaviest cluster containing an equivalent gold answer, or None."""
    return ClusterMatcher(clusters, policy).match(answer)


def truncation_length(matches: Matches, scheme: TruncationScheme) -> int:
    """How many leading answers a scheme keeps, given each answer's match."""
    if scheme.kind == TruncationKind.ANS_AT_K:
        return min(scheme.k, len(matches))

    wrong = 0
    for position, match in enumerate(matches):
        if match is None:
            wrong += 1
            if wrong == scheme.k:
                return position
    return len(matches)


def accuracy_of_matches(matches: Matches, weights: Sequence[int]) -> float:
    """Earned over ideal weight for an already truncated list of matches."""
    if not matches:
        return 0.0
    credited = set()
    earned = 0
    for match in matches:
        if match is not None and match not in credited:
            credited.add(match)
            earned += weights[match]
    ideal = sum(weights[: len(matches)])
    return earned / ideal if ideal else 0.0


def truncate(
    ranked: List[str],
    clusters: GroundTruthClusters,
    scheme: TruncationScheme,
    policy: MatchPolicy,
) -> List[str]:
    """Ans@k keeps the first k answers; Inc@k stops just before the k-th unmatched answer."""
    matches = ClusterMatcher(clusters, policy).match_all(ranked)
    return ranked[: truncation_length(matches, scheme)]


def weighted_accuracy(
    truncated: List[str], clusters: GroundTruthClusters, policy: MatchPolicy
) -> float:
    matches = ClusterMatcher(clusters, policy).match_all(truncated)
    return accuracy_of_matches(matches, clusters.weights)


def evaluate(
    predictions: Sequence[Prediction],
    ground: Sequence[GroundTruthClusters],
    schemes: Optional[Sequence[TruncationScheme]] = None,
    policy: MatchPolicy = MatchPolicy(),
) -> EvalReport:
    """Per-question and mean weighted accuracy of every scheme.

    Only predicted questions are scored; ground truth without a prediction
    is logged and left out of the means.

    Raises:
        DataError: If any prediction has no ground truth (all offending ids are listed)
    """
    schemes = list(schemes) if schemes is not None else standard_schemes()
    truth_by_id: Dict[str, GroundTruthClusters] = {g.question_id: g for g in ground}

    missing = [p.question_id for p in predictions if p.question_id not in truth_by_id]
    if missing:
        raise DataError(f"predictions without ground truth: {', '.join(missing)}")

    unpredicted = len(truth_by_id) - len({p.question_id for p in predictions})
    if unpredicted:
        logger.warning(f"{unpredicted} questions have ground truth but no prediction")

    per_question: Dict[str, Dict[str, float]] = {}
    for prediction in predictions:
        truth = truth_by_id[prediction.question_id]
        matches = ClusterMatcher(truth, policy).match_all(prediction.ranked_answers)
        per_question[prediction.question_id] = {
            scheme.name: accuracy_of_matches(
                matches[: truncation_length(matches, scheme)], truth.weights
            )
            for scheme in schemes
        }

    per_metric = {
        scheme.name: (
            sum(scores[scheme.name] for scores in per_question.values()) / len(per_question)
            if per_question
            else 0.0
        )
        for scheme in schemes
    }
    for name, mean in per_metric.items():
        logger.info(f"{name}: {mean:.4f}")

    return EvalReport(policy=policy.mode, per_metric=per_metric, per_question=per_question)


def keyword_macro_accuracy(
    extracted: Sequence[KeywordList], gold: Sequence[Sequence[str]], m: int
) -> float:
    """Mean over questions of ``|top-m extracted ∩ gold| / min(m, |gold|)``.

    Questions with an empty gold list are left out of the mean and counted in a
    warning.

    Raises:
        DataError: If the lists are not aligned
        ValueError: If ``m`` is below 1
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if len(extracted) != len(gold):
        raise DataError(
            f"{len(extracted)} extracted keyword lists but {len(gold)} gold keyword lists"
        )

    accuracies = []
    skipped = 0
    for keywords, gold_keywords in zip(extracted, gold):
        if not gold_keywords:
            skipped += 1
            continue
        hits = set(keywords.tokens[:m]) & set(gold_keywords)
        accuracies.append(len(hits) / min(m, len(gold_keywords)))
    if skipped:
        logger.warning(f"Keyword accuracy skipped {skipped} questions without gold keywords")
    return sum(accuracies) / len(accuracies) if accuracies else 0.0


def selection_accuracy(chosen: Sequence[int], gold: Sequence[int]) -> float:
    """Fraction of chosen definition indexes that equal the annotated ones.

    Raises:
        DataError: If the lists are not aligned
    """
    if len(chosen) != len(gold):
        raise DataError(f"{len(chosen)} chosen indexes but {len(gold)} gold indexes")
    if not chosen:
        return 0.0
    return sum(1 for c, g in zip(chosen, gold) if c == g) / len(chosen)
