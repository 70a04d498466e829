"""Lexicons, IDF tables, rewrite rules, ranker corpora and scorer models.

Bundled defaults (stop words, synonym lexicon) ship as package data and are
used whenever no path is given.
"""

import json
import logging
from importlib import resources
from pathlib import Path
from typing import Iterable, List, Optional

from pydantic import ValidationError

from kepr.exceptions import DataError
from kepr.infrastructure.persistence.jsonl import iter_records, write_records
from kepr.models import (
    DictionaryIndex,
    IdfTable,
    LogisticModel,
    RankerInstance,
    RewriteRule,
    StopWordList,
    SynonymLexicon,
)

logger = logging.getLogger(__name__)

_DATA_PACKAGE = "kepr.data"


def _read_text(path: Optional[Path], bundled: str) -> str:
    try:
        if path is None:
            return resources.files(_DATA_PACKAGE).joinpath(bundled).read_text(encoding="utf-8")
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise DataError(f"cannot read {path or bundled}: {e}") from e


# ============================================================
# Stop words and synonyms
# ============================================================


def load_stop_words(path: Optional[Path] = None) -> StopWordList:
    """One word per line; blank lines ignored."""
    text = _read_text(path, "stopwords.txt")
    words = frozenset(line.strip().lower() for line in text.splitlines() if line.strip())
    return StopWordList(words=words)


def parse_synsets(lines: Iterable[str]) -> List[List[str]]:
    synsets = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            synsets.append(line.lower().split())
    return synsets


def load_lexicon(path: Optional[Path] = None) -> SynonymLexicon:
    """One synset per line, lemmas separated by spaces, '#' starts a comment."""
    text = _read_text(path, "synonyms.txt")
    lexicon = SynonymLexicon.from_synsets(parse_synsets(text.splitlines()))
    logger.debug(f"Loaded {len(lexicon.synsets)} synsets from {path or 'bundled lexicon'}")
    return lexicon


# ============================================================
# IDF tables
# ============================================================


def write_idf_table(table: IdfTable, path: Path) -> None:
    """Header record ``{"num_questions"}`` then one ``{"token", "idf"}`` per token."""
    records = [{"num_questions": table.num_questions}]
    records.extend({"token": t, "idf": v} for t, v in sorted(table.idf.items()))
    write_records(path, records)


def load_idf_table(path: Path) -> IdfTable:
    num_questions: Optional[int] = None
    idf = {}
    for line_number, record in iter_records(path):
        if "num_questions" in record:
            num_questions = record["num_questions"]
            continue
        try:
            idf[str(record["token"])] = float(record["idf"])
        except (KeyError, TypeError, ValueError) as e:
            raise DataError(f"{path}:{line_number}: invalid idf record: {e}") from e
    if num_questions is None:
        raise DataError(f"{path}: missing num_questions header record")
    try:
        return IdfTable(idf=idf, num_questions=num_questions)
    except ValidationError as e:
        raise DataError(f"{path}: invalid idf table: {e}") from e


# ============================================================
# Dictionary index
# ============================================================


def write_index(index: DictionaryIndex, path: Path) -> None:
    """One ``{"lemma", "definitions"}`` line per lemma, in dump order."""
    count = write_records(
        path,
        ({"lemma": lemma, "definitions": list(defs)} for lemma, defs in index.entries.items()),
    )
    logger.info(f"Wrote {count} dictionary entries to {path}")


# ============================================================
# Rewrite rules
# ============================================================


def load_rules(path: Path) -> List[RewriteRule]:
    """Line records ``{"prefix", "head"}``."""
    rules = []
    for line_number, record in iter_records(path):
        try:
            rules.append(RewriteRule(prefix=record["prefix"], head=record["head"]))
        except (KeyError, ValidationError) as e:
            raise DataError(f"{path}:{line_number}: invalid rewrite rule: {e}") from e
    return rules


def write_rules(rules: List[RewriteRule], path: Path) -> None:
    write_records(path, ({"prefix": r.prefix, "head": r.head.value} for r in rules))


# ============================================================
# Ranker corpora and models
# ============================================================


def write_ranker_corpus(instances: List[RankerInstance], path: Path) -> None:
    write_records(
        path,
        (
            {"id": i.question_id, "question": i.question_text, "answer": i.answer, "label": i.label}
            for i in instances
        ),
    )


def load_ranker_corpus(path: Path) -> List[RankerInstance]:
    instances = []
    for line_number, record in iter_records(path):
        try:
            instances.append(
                RankerInstance(
                    question_id=record["id"],
                    question_text=record["question"],
                    answer=record["answer"],
                    label=record["label"],
                )
            )
        except (KeyError, ValidationError) as e:
            raise DataError(f"{path}:{line_number}: invalid ranker instance: {e}") from e
    return instances


def write_model(model: LogisticModel, path: Path) -> None:
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(json.dumps(model.model_dump()) + "\n", encoding="utf-8")
    except OSError as e:
        raise DataError(f"cannot write {path}: {e}") from e


def load_model(path: Path) -> LogisticModel:
    try:
        return LogisticModel(**json.loads(Path(path).read_text(encoding="utf-8")))
    except OSError as e:
        raise DataError(f"cannot read {path}: {e}") from e
    except (json.JSONDecodeError, TypeError, ValidationError) as e:
        raise DataError(f"{path}: invalid model file: {e}") from e
