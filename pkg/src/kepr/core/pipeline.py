"""End-to-end generate-then-rank pipeline.

Per question: keywords, rewrite, knowledge retrieval, prompt, generation,
dedup, retain, rank. Questions run concurrently up to ``workers``; output
order always follows input order.
"""

import asyncio
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from kepr.config.pipeline import PipelineConfig
from kepr.core.dedup import dedup, retain_top
from kepr.core.generate import build_prompt, generate_candidates
from kepr.core.keywords import build_idf, extract_keywords
from kepr.core.ranker import rank_answers
from kepr.core.retrieve import build_index, retrieve_knowledge
from kepr.core.rewrite import default_rules, rewrite
from kepr.exceptions import KeprError
from kepr.infrastructure.backends import Embedder, GeneratorBackend, ScorerBackend
from kepr.infrastructure.backends.factory import create_embedder, create_generator, create_scorer
from kepr.infrastructure.persistence import (
    load_idf_table,
    load_lexicon,
    load_rules,
    load_stop_words,
    write_records,
)
from kepr.models import (
    DictionaryIndex,
    IdfTable,
    KnowledgeSet,
    Prediction,
    Question,
    QuestionFailure,
    RewriteRule,
    StopWordList,
    SynonymLexicon,
)

logger = logging.getLogger(__name__)


class _StageFailure(Exception):
    def __init__(self, stage: str, error: BaseException):
        super().__init__(f"{stage}: {error}")
        self.stage = stage
        self.error = error


class PipelineRunner:
    """Runs the pipeline over questions with shared, read-only resources.

    Failures of a single question are recorded in ``failures`` and give that
    question an empty prediction; the run itself goes on.
    """

    def __init__(
        self,
        config: PipelineConfig,
        idf: IdfTable,
        index: DictionaryIndex,
        stop_words: StopWordList,
        lexicon: SynonymLexicon,
        rules: List[RewriteRule],
        generator: GeneratorBackend,
        scorer: ScorerBackend,
        embedder: Embedder,
    ):
        self.config = config
        self.idf = idf
        self.index = index
        self.stop_words = stop_words
        self.lexicon = lexicon
        self.rules = rules
        self.generator = generator
        self.scorer = scorer
        self.embedder = embedder
        self.failures: List[QuestionFailure] = []

    @classmethod
    def from_config(
        cls, config: PipelineConfig, questions: Sequence[Question]
    ) -> "PipelineRunner":
        """Load artifacts and create backends named by ``config``.

        Without an ``idf_table`` the IDF is built over ``questions``.

        Raises:
            ConfigError: If a required path is unset or missing
        """
        stop_words = load_stop_words(config.require("stop_words") if config.stop_words else None)
        lexicon = load_lexicon(config.require("lexicon") if config.lexicon else None)
        rules = load_rules(config.require("rules")) if config.rules else default_rules()

        if config.idf_table is not None:
            idf = load_idf_table(config.require("idf_table"))
        else:
            logger.info("No IDF table configured; building one over the input questions")
            idf = build_idf(questions, stop_words)

        if config.use_knowledge:
            index = build_index(config.require("dictionary"))
        else:
            index = DictionaryIndex()

        return cls(
            config=config,
            idf=idf,
            index=index,
            stop_words=stop_words,
            lexicon=lexicon,
            rules=rules,
            generator=create_generator(config),
            scorer=create_scorer(config, stop_words, lexicon),
            embedder=create_embedder(config, stop_words),
        )

    async def answer(self, question: Question) -> Prediction:
        """Run every stage for one question.

        Raises:
            _StageFailure: Wrapping the error of the stage that failed
        """
        config = self.config
        stage = "keywords"
        try:
            knowledge = KnowledgeSet()
            if config.use_knowledge:
                keywords = extract_keywords(question, self.idf, config.m, self.stop_words)
                stage = "retrieve"
                knowledge = await retrieve_knowledge(
                    question,
                    keywords,
                    self.index,
                    self.embedder,
                    config.definition_selection,
                    config.similarity,
                )

            stage = "rewrite"
            prompt_question = rewrite(question, self.rules) if config.use_rewrite else question.text
            prompt = build_prompt(knowledge, prompt_question, config.markers)

            stage = "generate"
            candidates = await generate_candidates(
                self.generator, prompt, config.beam_width, config.max_answer_tokens
            )

            stage = "dedup"
            retained = retain_top(
                dedup(candidates, self.stop_words, self.lexicon), config.retain
            )

            stage = "rank"
            if config.use_ranker:
                ranked = await rank_answers(question, retained, self.scorer, config.final_count)
                answers = [answer for answer, _ in ranked]
            else:
                answers = [c.text for c in retained[: config.final_count]]
        except (KeprError, ValueError) as e:
            raise _StageFailure(stage, e) from e

        return Prediction(question_id=question.id, ranked_answers=answers)

    async def run(self, questions: Sequence[Question]) -> List[Prediction]:
        self.failures = []
        semaphore = asyncio.Semaphore(self.config.workers)

        async def guarded(question: Question) -> Prediction:
            async with semaphore:
                try:
                    return await self.answer(question)
                except _StageFailure as failure:
                    logger.warning(
                        f"Question {question.id} failed at {failure.stage}: {failure.error}"
                    )
                    self.failures.append(
                        QuestionFailure(
                            question_id=question.id, stage=failure.stage, error=str(failure.error)
                        )
                    )
                    return Prediction(question_id=question.id)

        predictions = await asyncio.gather(*(guarded(q) for q in questions))

        # Failures arrive in completion order.
        order = {q.id: i for i, q in enumerate(questions)}
        self.failures.sort(key=lambda f: order[f.question_id])

        logger.info(
            f"Pipeline finished: {len(predictions)} predictions, {len(self.failures)} failures"
        )
        return list(predictions)

    async def aclose(self) -> None:
        for backend in (self.generator, self.scorer, self.embedder):
            await backend.aclose()


def write_failures(failures: Iterable[QuestionFailure], path: Path) -> int:
    """Write one ``{"id", "stage", "error"}`` record per failed question."""
    return write_records(
        path, ({"id": f.question_id, "stage": f.stage, "error": f.error} for f in failures)
    )


async def run_pipeline(
    config: PipelineConfig,
    questions: Sequence[Question],
    error_log: Optional[Path] = None,
) -> List[Prediction]:
    """Answer every question; one prediction per question, in input order.

    Raises:
        ConfigError: If the configuration names missing artifacts
    """
    if not questions:
        return []
    runner = PipelineRunner.from_config(config, questions)
    try:
        return await runner.run(questions)
    finally:
        if error_log is not None:
            write_failures(runner.failures, error_log)
        await runner.aclose()
