"""Dataset and prediction files."""

import logging
from pathlib import Path
from typing import Any, Dict, List, Tuple

from pydantic import ValidationError

from kepr.exceptions import DataError
from kepr.infrastructure.persistence.jsonl import iter_records, write_records
from kepr.models import AnswerCluster, GroundTruthClusters, Prediction, Question, normalize_text

logger = logging.getLogger(__name__)


def _unique_answers(answers: List[str]) -> List[str]:
    seen = set()
    unique = []
    for answer in answers:
        key = normalize_text(answer).joined()
        if key and key not in seen:
            seen.add(key)
            unique.append(answer)
    return unique


def _parse_protoqa_record(record: Dict[str, Any]) -> Tuple[Question, GroundTruthClusters]:
    """Native ProtoQA layout: metadata.id, question.original, answers.clusters.

    Clusters without votes or answers are dropped and answers that normalize
    to the same text are kept once.
    """
    text = record["question"].get("original") or record["question"]["normalized"]
    question = Question(id=record["metadata"]["id"], text=text)
    clusters = []
    for label, cluster in record["answers"]["clusters"].items():
        answers = _unique_answers(cluster.get("answers", []))
        if cluster.get("count", 0) >= 1 and answers:
            clusters.append(AnswerCluster(label=label, weight=cluster["count"], answers=answers))
    return question, GroundTruthClusters(question_id=question.id, clusters=clusters)


def _parse_dataset_record(
    path: Path, line_number: int, record: Dict[str, Any]
) -> Tuple[Question, GroundTruthClusters]:
    try:
        if isinstance(record.get("question"), dict):
            return _parse_protoqa_record(record)
        question = Question(id=record["id"], text=record["question"])
        clusters = [
            AnswerCluster(label=c.get("label"), weight=c["count"], answers=c["answers"])
            for c in record.get("clusters", [])
        ]
        return question, GroundTruthClusters(question_id=question.id, clusters=clusters)
    except (KeyError, TypeError, AttributeError, ValidationError) as e:
        raise DataError(f"{path}:{line_number}: invalid dataset record: {e}") from e


def load_dataset(path: Path) -> List[Tuple[Question, GroundTruthClusters]]:
    """Load questions with their weighted answer clusters, heaviest cluster first.

    Raises:
        DataError: On a malformed line (naming its line number) or a duplicate id
    """
    dataset: List[Tuple[Question, GroundTruthClusters]] = []
    seen: Dict[str, int] = {}
    for line_number, record in iter_records(path):
        question, truth = _parse_dataset_record(Path(path), line_number, record)
        if question.id in seen:
            raise DataError(
                f"{path}:{line_number}: duplicate question id {question.id!r} "
                f"(first seen on line {seen[question.id]})"
            )
        seen[question.id] = line_number
        dataset.append((question, truth))

    logger.info(f"Loaded {len(dataset)} questions from {path}")
    return dataset


def load_questions(path: Path) -> List[Question]:
    """Questions from a dataset file or a bare ``{"id", "question"}`` file."""
    questions: List[Question] = []
    seen = set()
    for line_number, record in iter_records(path):
        try:
            if isinstance(record.get("question"), dict):
                question, _ = _parse_protoqa_record(record)
            else:
                question = Question(id=record["id"], text=record["question"])
        except (KeyError, TypeError, AttributeError, ValidationError) as e:
            raise DataError(f"{path}:{line_number}: invalid question record: {e}") from e
        if question.id in seen:
            raise DataError(f"{path}:{line_number}: duplicate question id {question.id!r}")
        seen.add(question.id)
        questions.append(question)
    return questions


def dataset_record(question: Question, truth: GroundTruthClusters) -> Dict[str, Any]:
    return {
        "id": question.id,
        "question": question.text,
        "clusters": [
            {"label": c.label, "count": c.weight, "answers": list(c.answers)}
            for c in truth.clusters
        ],
    }


def write_dataset(dataset: List[Tuple[Question, GroundTruthClusters]], path: Path) -> None:
    write_records(path, (dataset_record(q, t) for q, t in dataset))


def write_predictions(predictions: List[Prediction], path: Path) -> None:
    """Write one ``{"id", "ranked_answers"}`` line per prediction.

    Raises:
        DataError: If the file cannot be written (message names the path)
    """
    count = write_records(
        path,
        ({"id": p.question_id, "ranked_answers": list(p.ranked_answers)} for p in predictions),
    )
    logger.info(f"Wrote {count} predictions to {path}")


def load_predictions(path: Path) -> List[Prediction]:
    predictions: List[Prediction] = []
    for line_number, record in iter_records(path):
        try:
            predictions.append(
                Prediction(question_id=record["id"], ranked_answers=record["ranked_answers"])
            )
        except (KeyError, ValidationError) as e:
            raise DataError(f"{path}:{line_number}: invalid prediction record: {e}") from e
    return predictions
