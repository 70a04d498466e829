"""Line-record persistence for datasets, predictions and pipeline artifacts."""

from kepr.infrastructure.persistence.jsonl import iter_records, write_records
from kepr.infrastructure.persistence.dataset_store import (
    load_dataset,
    load_predictions,
    load_questions,
    write_dataset,
    write_predictions,
)
from kepr.infrastructure.persistence.artifact_store import (
    load_idf_table,
    load_lexicon,
    load_model,
    load_ranker_corpus,
    load_rules,
    load_stop_words,
    write_idf_table,
    write_index,
    write_model,
    write_ranker_corpus,
    write_rules,
)

__all__ = [
    "iter_records",
    "write_records",
    "load_dataset",
    "load_predictions",
    "load_questions",
    "write_dataset",
    "write_predictions",
    "load_idf_table",
    "load_lexicon",
    "load_model",
    "load_ranker_corpus",
    "load_rules",
    "load_stop_words",
    "write_idf_table",
    "write_index",
    "write_model",
    "write_ranker_corpus",
    "write_rules",
]
