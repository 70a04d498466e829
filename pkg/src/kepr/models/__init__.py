"""Models package."""

from .text import TokenSequence, normalize_text
from .dataset import AnswerCluster, GroundTruthClusters, Prediction, Question, QuestionFailure
from .keywords import IdfTable, Keyword, KeywordList
from .rewrite import RewriteHead, RewriteRule, RewrittenQuestion
from .knowledge import DictionaryIndex, KnowledgeItem, KnowledgeSet
from .candidates import Candidate, MarkerSet, Prompt, RawCandidate
from .lexicon import NormalForm, StopWordList, SynonymLexicon
from .ranking import (
    FEATURE_VERSION,
    FeatureVector,
    LogisticModel,
    RankerCorpus,
    RankerInstance,
    TrainingResult,
)
from .evaluation import (
    PRIMARY_METRIC,
    EvalReport,
    MatchMode,
    MatchPolicy,
    TruncationKind,
    TruncationScheme,
    standard_schemes,
)

__all__ = [
    "TokenSequence",
    "normalize_text",
    "AnswerCluster",
    "GroundTruthClusters",
    "Prediction",
    "Question",
    "QuestionFailure",
    "IdfTable",
    "Keyword",
    "KeywordList",
    "RewriteHead",
    "RewriteRule",
    "RewrittenQuestion",
    "DictionaryIndex",
    "KnowledgeItem",
    "KnowledgeSet",
    "Candidate",
    "MarkerSet",
    "Prompt",
    "RawCandidate",
    "NormalForm",
    "StopWordList",
    "SynonymLexicon",
    "FEATURE_VERSION",
    "FeatureVector",
    "LogisticModel",
    "RankerCorpus",
    "RankerInstance",
    "TrainingResult",
    "PRIMARY_METRIC",
    "EvalReport",
    "MatchMode",
    "MatchPolicy",
    "TruncationKind",
    "TruncationScheme",
    "standard_schemes",
]
