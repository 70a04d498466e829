"""Prefix-pattern rewriting of questions into Cloze-style statements.

"Name something that ..." becomes "One thing that ... is"; questions whose
prefix is not in the table fall back to "Q: <question> A:".
"""

import logging
import re
from typing import List, Optional, Sequence, Tuple

from kepr.models import Question, RewriteHead, RewriteRule, RewrittenQuestion

logger = logging.getLogger(__name__)

_SENTENCE_END = "?.!"

# Prefix table in order of frequency in the training questions.
_DEFAULT_TABLE = (
    ("name something", RewriteHead.ONE_THING),
    ("name a", RewriteHead.ONE),
    ("what", RewriteHead.ONE_THING),
    ("name an", RewriteHead.ONE),
    ("name", RewriteHead.ONE),
    ("tell me something", RewriteHead.ONE_THING),
    ("which", RewriteHead.ONE),
    ("tell me a", RewriteHead.ONE),
    ("tell me", RewriteHead.ONE),
    ("give me a", RewriteHead.ONE),
    ("tell me an", RewriteHead.ONE),
    ("how can you tell", RewriteHead.ONE_WAY_TO_TELL),
)


def default_rules() -> List[RewriteRule]:
    """The twelve bundled prefix rules."""
    return [RewriteRule(prefix=prefix, head=head) for prefix, head in _DEFAULT_TABLE]


def _strip_sentence_end(text: str) -> str:
    return text.strip().rstrip(_SENTENCE_END + " \t").strip()


def _match_prefix(
    text: str, rules: Sequence[RewriteRule]
) -> Optional[Tuple[RewriteRule, int]]:
    """Longest rule prefix matching ``text`` case-insensitively at a token boundary.

    Any run of whitespace in the question matches a single space of the prefix.
    Returns the rule and the offset in ``text`` where the prefix ends.
    """
    for rule in sorted(rules, key=lambda r: len(r.prefix), reverse=True):
        pattern = r"\s+".join(re.escape(word) for word in rule.prefix.split(" "))
        match = re.match(pattern, text, re.IGNORECASE)
        if match is None:
            continue
        end = match.end()
        if end == len(text) or not text[end].isalnum():
            return rule, end
    return None


def rewrite(question: Question, rules: Optional[Sequence[RewriteRule]] = None) -> RewrittenQuestion:
    """Rewrite ``question`` with the longest matching prefix rule.

    The head is capitalized iff the question starts with an uppercase letter.
    """
    if rules is None:
        rules = default_rules()

    text = question.text.strip()
    matched = _match_prefix(text, rules)

    if matched is None:
        content = _strip_sentence_end(text)
        logger.debug(f"No rewrite rule for question {question.id}; using Q/A fallback")
        return RewrittenQuestion(text=f"Q: {content} A:", matched_prefix=None, content=content)

    rule, end = matched
    content = _strip_sentence_end(text[end:])
    head = rule.head.value
    if text[:1].isupper():
        head = head[0].upper() + head[1:]
    rewritten = f"{head} {content} is" if content else f"{head} is"
    return RewrittenQuestion(text=rewritten, matched_prefix=rule.prefix, content=content)
