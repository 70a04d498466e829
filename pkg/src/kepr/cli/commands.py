"""Subcommand handlers.

Every handler takes the parsed arguments, reads its inputs, and writes line
records to ``--out`` or standard output. Intermediate formats:

- keywords:   {"id", "keywords": [{"token", "score"}]}
- rewrite:    {"id", "question", "rewritten", "prefix"}
- retrieve:   {"id", "question", "knowledge": [{"keyword", "definition", "score"}], "rendered"}
- candidates: {"id", "question", "candidates": [{"text", "confidence"}]} (generate, dedup)
"""

import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple

from pydantic import ValidationError

from kepr.config import PipelineConfig, load_pipeline_config
from kepr.core.dedup import dedup, retain_top
from kepr.core.evaluation import evaluate, keyword_macro_accuracy
from kepr.core.generate import build_prompt, generate_candidates
from kepr.core.keywords import build_idf, extract_keywords
from kepr.core.logistic import evaluate_scorer, train_logistic
from kepr.core.pipeline import run_pipeline
from kepr.core.ranker import build_ranker_corpus, rank_answers
from kepr.core.retrieve import build_index, retrieve_knowledge
from kepr.core.rewrite import default_rules, rewrite
from kepr.exceptions import DataError, UsageError
from kepr.infrastructure.backends.factory import create_embedder, create_generator, create_scorer
from kepr.infrastructure.persistence import (
    iter_records,
    load_dataset,
    load_idf_table,
    load_lexicon,
    load_predictions,
    load_questions,
    load_ranker_corpus,
    load_rules,
    load_stop_words,
    write_idf_table,
    write_index,
    write_model,
    write_predictions,
    write_ranker_corpus,
    write_records,
)
from kepr.models import (
    Candidate,
    KnowledgeItem,
    KnowledgeSet,
    MatchPolicy,
    Prediction,
    Question,
    RewriteRule,
    StopWordList,
    SynonymLexicon,
    TruncationScheme,
    standard_schemes,
)

logger = logging.getLogger(__name__)


# ============================================================
# Shared helpers
# ============================================================


def load_config(args: argparse.Namespace) -> PipelineConfig:
    """Config file (or defaults) with every matching command-line flag applied."""
    config = load_pipeline_config(args.config)
    overrides = {
        name: getattr(args, name)
        for name in PipelineConfig.model_fields
        if getattr(args, name, None) is not None
    }
    return config.with_overrides(**overrides)


def emit(records: Iterable[Dict[str, Any]], out: Optional[Path]) -> None:
    if out is not None:
        count = write_records(out, records)
        logger.info(f"Wrote {count} records to {out}")
        return
    for record in records:
        sys.stdout.write(json.dumps(record, ensure_ascii=False) + "\n")
    sys.stdout.flush()


def _require_out(args: argparse.Namespace) -> Path:
    if args.out is None:
        raise UsageError(f"{args.command}: --out is required")
    return args.out


def _stop_words(config: PipelineConfig) -> StopWordList:
    return load_stop_words(config.require("stop_words") if config.stop_words else None)


def _lexicon(config: PipelineConfig) -> SynonymLexicon:
    return load_lexicon(config.require("lexicon") if config.lexicon else None)


def _rules(config: PipelineConfig) -> List[RewriteRule]:
    return load_rules(config.require("rules")) if config.rules else default_rules()


def _questions(args: argparse.Namespace, config: PipelineConfig) -> List[Question]:
    return load_questions(args.input if args.input else config.require("dataset"))


def _read_knowledge(path: Path) -> List[Tuple[Question, KnowledgeSet]]:
    """Retrieve output; bare question records get an empty knowledge set."""
    rows = []
    for line_number, record in iter_records(path):
        try:
            question = Question(id=record["id"], text=record["question"])
            items = [KnowledgeItem(**item) for item in record.get("knowledge", [])]
        except (KeyError, TypeError, ValidationError) as e:
            raise DataError(f"{path}:{line_number}: invalid knowledge record: {e}") from e
        rows.append((question, KnowledgeSet(items=items)))
    return rows


def _read_candidates(path: Path) -> List[Tuple[Question, List[Candidate]]]:
    rows = []
    for line_number, record in iter_records(path):
        try:
            question = Question(id=record["id"], text=record["question"])
            candidates = [Candidate(**c) for c in record.get("candidates", [])]
        except (KeyError, TypeError, ValidationError) as e:
            raise DataError(f"{path}:{line_number}: invalid candidate record: {e}") from e
        rows.append((question, candidates))
    return rows


def _candidate_record(question: Question, candidates: List[Candidate]) -> Dict[str, Any]:
    return {
        "id": question.id,
        "question": question.text,
        "candidates": [{"text": c.text, "confidence": c.confidence} for c in candidates],
    }


# ============================================================
# Retriever stages
# ============================================================


def cmd_build_idf(args: argparse.Namespace) -> None:
    config = load_config(args)
    table = build_idf(_questions(args, config), _stop_words(config))
    write_idf_table(table, _require_out(args))


def cmd_extract_keywords(args: argparse.Namespace) -> None:
    config = load_config(args)
    stop_words = _stop_words(config)
    idf = load_idf_table(config.require("idf_table"))
    questions = _questions(args, config)
    extracted = [extract_keywords(q, idf, config.m, stop_words) for q in questions]

    records: List[Dict[str, Any]] = [
        {"id": q.id, "keywords": [k.model_dump() for k in kws.keywords]}
        for q, kws in zip(questions, extracted)
    ]
    emit(records, args.out)

    if args.gold is not None:
        gold_by_id = {}
        for line_number, record in iter_records(args.gold):
            if "id" not in record or not isinstance(record.get("keywords"), list):
                raise DataError(f"{args.gold}:{line_number}: expected {{'id', 'keywords'}}")
            gold_by_id[record["id"]] = [str(k).lower() for k in record["keywords"]]
        missing = [q.id for q in questions if q.id not in gold_by_id]
        if missing:
            raise DataError(f"no gold keywords for: {', '.join(missing)}")
        accuracy = keyword_macro_accuracy(
            extracted, [gold_by_id[q.id] for q in questions], config.m
        )
        logger.info(f"Keyword macro accuracy at m={config.m}: {accuracy:.4f}")
        emit([{"metric": f"keyword_accuracy@{config.m}", "mean": accuracy}], None)


def cmd_rewrite(args: argparse.Namespace) -> None:
    config = load_config(args)
    rules = _rules(config)
    records = []
    for question in _questions(args, config):
        rewritten = rewrite(question, rules)
        records.append(
            {
                "id": question.id,
                "question": question.text,
                "rewritten": rewritten.text,
                "prefix": rewritten.matched_prefix,
            }
        )
    emit(records, args.out)


def cmd_build_index(args: argparse.Namespace) -> None:
    config = load_config(args)
    write_index(build_index(config.require("dictionary")), _require_out(args))


async def _retrieve(args: argparse.Namespace, config: PipelineConfig) -> List[Dict[str, Any]]:
    stop_words = _stop_words(config)
    idf = load_idf_table(config.require("idf_table"))
    index = build_index(config.require("dictionary"))
    embedder = create_embedder(config, stop_words)
    records = []
    try:
        for question in _questions(args, config):
            keywords = extract_keywords(question, idf, config.m, stop_words)
            knowledge = await retrieve_knowledge(
                question, keywords, index, embedder, config.definition_selection, config.similarity
            )
            records.append(
                {
                    "id": question.id,
                    "question": question.text,
                    "knowledge": [item.model_dump() for item in knowledge.items],
                    "rendered": knowledge.rendered,
                }
            )
    finally:
        await embedder.aclose()
    return records


def cmd_retrieve(args: argparse.Namespace) -> None:
    config = load_config(args)
    emit(asyncio.run(_retrieve(args, config)), args.out)


# ============================================================
# Generator stages
# ============================================================


async def _generate(args: argparse.Namespace, config: PipelineConfig) -> List[Dict[str, Any]]:
    rows = _read_knowledge(args.input if args.input else config.require("dataset"))
    rules = _rules(config)
    generator = create_generator(config)
    records = []
    try:
        for question, knowledge in rows:
            prompt_question = rewrite(question, rules) if config.use_rewrite else question.text
            prompt = build_prompt(knowledge, prompt_question, config.markers)
            candidates = await generate_candidates(
                generator, prompt, config.beam_width, config.max_answer_tokens
            )
            record = _candidate_record(question, candidates)
            record["prompt"] = prompt.text
            records.append(record)
    finally:
        await generator.aclose()
    return records


def cmd_generate(args: argparse.Namespace) -> None:
    config = load_config(args)
    emit(asyncio.run(_generate(args, config)), args.out)


def cmd_dedup(args: argparse.Namespace) -> None:
    config = load_config(args)
    stop_words, lexicon = _stop_words(config), _lexicon(config)
    emit(
        (
            _candidate_record(q, retain_top(dedup(cands, stop_words, lexicon), config.retain))
            for q, cands in _read_candidates(args.input)
        ),
        args.out,
    )


# ============================================================
# Ranker stages
# ============================================================


def cmd_build_ranker_corpus(args: argparse.Namespace) -> None:
    config = load_config(args)
    dataset = load_dataset(config.require("dataset"))
    corpus = build_ranker_corpus(
        dataset, config.n, config.seed, _stop_words(config), _lexicon(config)
    )
    write_ranker_corpus(corpus.instances, _require_out(args))
    if corpus.skipped_question_ids:
        logger.warning(f"Skipped questions: {', '.join(corpus.skipped_question_ids)}")


def cmd_train_scorer(args: argparse.Namespace) -> None:
    config = load_config(args)
    stop_words, lexicon = _stop_words(config), _lexicon(config)
    result = train_logistic(
        load_ranker_corpus(args.corpus),
        stop_words,
        lexicon,
        config.learning_rate,
        config.epochs,
        config.seed,
    )
    write_model(result.model, _require_out(args))
    logger.info(f"Final training loss: {result.loss_trace[-1]:.6f}")

    if args.validation is not None:
        metrics = evaluate_scorer(
            result.model, load_ranker_corpus(args.validation), stop_words, lexicon
        )
        logger.info(
            f"Validation: loss {metrics['loss']:.6f}, accuracy {metrics['accuracy']:.4f}"
        )
        emit([{"split": "validation", **metrics}], None)


async def _rank(args: argparse.Namespace, config: PipelineConfig) -> List[Prediction]:
    scorer = create_scorer(config, _stop_words(config), _lexicon(config))
    predictions = []
    try:
        for question, candidates in _read_candidates(args.input):
            ranked = await rank_answers(question, candidates, scorer, config.final_count)
            try:
                prediction = Prediction(
                    question_id=question.id, ranked_answers=[a for a, _ in ranked]
                )
            except ValidationError as e:
                raise DataError(
                    f"{args.input}: question {question.id} has candidates that are "
                    f"equal after normalization; run dedup first: {e}"
                ) from e
            predictions.append(prediction)
    finally:
        await scorer.aclose()
    return predictions


def _emit_predictions(predictions: List[Prediction], out: Optional[Path]) -> None:
    if out is not None:
        write_predictions(predictions, out)
        return
    emit(({"id": p.question_id, "ranked_answers": p.ranked_answers} for p in predictions), None)


def cmd_rank(args: argparse.Namespace) -> None:
    config = load_config(args)
    _emit_predictions(asyncio.run(_rank(args, config)), args.out)


# ============================================================
# Evaluation and end-to-end runs
# ============================================================


def cmd_evaluate(args: argparse.Namespace) -> None:
    config = load_config(args)
    try:
        extra = [TruncationScheme.parse(name) for name in args.schemes]
    except ValueError as e:
        raise UsageError(str(e)) from e
    schemes = standard_schemes()
    schemes += [s for s in extra if s not in schemes]

    policy = MatchPolicy(
        mode=config.match_policy, stop_words=_stop_words(config), lexicon=_lexicon(config)
    )
    ground = [truth for _, truth in load_dataset(config.require("dataset"))]
    report = evaluate(load_predictions(args.predictions), ground, schemes, policy)

    records: List[Dict[str, Any]] = [
        {"policy": report.policy.value, "primary_metric": report.primary_metric}
    ]
    records += [{"metric": name, "mean": mean} for name, mean in report.per_metric.items()]
    records += [{"id": qid, "scores": scores} for qid, scores in report.per_question.items()]
    emit(records, args.out)


def cmd_pipeline(args: argparse.Namespace) -> None:
    config = load_config(args)
    questions = _questions(args, config)
    predictions = asyncio.run(run_pipeline(config, questions, args.errors))
    _emit_predictions(predictions, args.out)


HANDLERS = {
    "build-idf": cmd_build_idf,
    "extract-keywords": cmd_extract_keywords,
    "rewrite": cmd_rewrite,
    "build-index": cmd_build_index,
    "retrieve": cmd_retrieve,
    "generate": cmd_generate,
    "dedup": cmd_dedup,
    "build-ranker-corpus": cmd_build_ranker_corpus,
    "train-scorer": cmd_train_scorer,
    "rank": cmd_rank,
    "evaluate": cmd_evaluate,
    "pipeline": cmd_pipeline,
}
