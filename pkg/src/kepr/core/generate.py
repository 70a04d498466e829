"""Prompt construction and confidence-ranked candidate generation."""

import logging
import math
from typing import List, Union

from kepr.exceptions import BackendError
from kepr.infrastructure.backends.generator import GeneratorBackend
from kepr.models import Candidate, KnowledgeSet, MarkerSet, Prompt, RawCandidate, RewrittenQuestion

logger = logging.getLogger(__name__)

DEFAULT_BEAM_WIDTH = 24
DEFAULT_MAX_ANSWER_TOKENS = 3


def build_prompt(
    knowledge: KnowledgeSet,
    question: Union[RewrittenQuestion, str],
    markers: MarkerSet = MarkerSet(),
) -> Prompt:
    """Lay out ``BOS k_c SEP question MASK EOS`` with single spaces.

    An empty knowledge set leaves an empty k_c slot between BOS and SEP.
    ``question`` is normally the rewritten question; a plain string is used
    as-is when rewriting is switched off.
    """
    text = question.text if isinstance(question, RewrittenQuestion) else question
    layout = [markers.bos, knowledge.rendered, markers.sep, text, markers.mask, markers.eos]
    return Prompt(text=" ".join(layout), markers=markers)


def candidate_confidence(raw: RawCandidate) -> float:
    """Sum of the candidate's token log-probabilities.

    Raises:
        ValueError: If there are no log-probabilities or any is positive
    """
    if not raw.token_logprobs:
        raise ValueError(f"candidate {raw.text!r} has no token log-probabilities")
    if any(lp > 0 for lp in raw.token_logprobs):
        raise ValueError(f"candidate {raw.text!r} has a positive log-probability")
    return math.fsum(raw.token_logprobs)


def _strip_markers(text: str, markers: MarkerSet) -> str:
    for marker in markers.as_list():
        text = text.replace(marker, " ")
    return " ".join(text.split())


async def generate_candidates(
    backend: GeneratorBackend,
    prompt: Prompt,
    beam_width: int = DEFAULT_BEAM_WIDTH,
    max_answer_tokens: int = DEFAULT_MAX_ANSWER_TOKENS,
) -> List[Candidate]:
    """Request candidates and order them by confidence, highest first.

    Equal confidences keep the backend's order. Marker strings are removed
    from answer texts and answers left empty are dropped.

    Raises:
        ValueError: If ``beam_width`` or ``max_answer_tokens`` is below 1
        BackendError: On transport failure or invalid candidates
    """
    if beam_width < 1:
        raise ValueError(f"beam_width must be >= 1, got {beam_width}")
    if max_answer_tokens < 1:
        raise ValueError(f"max_answer_tokens must be >= 1, got {max_answer_tokens}")

    raw_candidates = await backend.request(prompt.text, beam_width, max_answer_tokens)
    if len(raw_candidates) > beam_width:
        raise BackendError(
            backend.name, f"returned {len(raw_candidates)} candidates for beam width {beam_width}"
        )

    candidates: List[Candidate] = []
    for raw in raw_candidates:
        try:
            confidence = candidate_confidence(raw)
        except ValueError as e:
            raise BackendError(backend.name, str(e)) from e
        text = _strip_markers(raw.text, prompt.markers)
        if text:
            candidates.append(Candidate(text=text, confidence=confidence))

    return sorted(candidates, key=lambda c: -c.confidence)
