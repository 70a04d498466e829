"""Knowledge-enhanced generate-then-rank pipeline for generative commonsense QA."""

__version__ = "1.0.0"
