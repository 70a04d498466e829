"""Unit tests for scorer features"""

import pytest

from kepr.core.features import FEATURE_DIM, FEATURE_NAMES, extract_features
from kepr.models import StopWordList, SynonymLexicon

QUESTION = "Name something that an athlete would not keep in her refrigerator."


@pytest.mark.unit
class TestExtractFeatures:
    """Test the fixed feature layout"""

    def test_dimension(self, stop_words, lexicon):
        assert FEATURE_DIM == len(FEATURE_NAMES) == 6
        assert len(extract_features(QUESTION, "junk food", stop_words, lexicon)) == FEATURE_DIM

    def test_values(self, stop_words, lexicon):
        """Happy path: each feature on a hand-checked pair"""
        values = extract_features(QUESTION, "a fridge athlete", stop_words, lexicon).values
        overlap, overlap_ratio, tokens, synonym_ratio, chars, single = values
        assert overlap == 1.0
        assert overlap_ratio == pytest.approx(0.5)
        assert tokens == 2.0
        # fridge shares a class with refrigerator, athlete is itself
        assert synonym_ratio == pytest.approx(1.0)
        assert chars == pytest.approx(len("a fridge athlete") / 32)
        assert single == 0.0

    def test_single_token_answer(self, stop_words, lexicon):
        values = extract_features(QUESTION, "beer", stop_words, lexicon).values
        assert values[:4] == [0.0, 0.0, 1.0, 0.0]
        assert values[5] == 1.0

    def test_stop_word_answer(self):
        """Edge case: no content tokens gives zero ratios"""
        stop = StopWordList(words=frozenset({"the"}))
        values = extract_features(QUESTION, "the", stop, SynonymLexicon.empty()).values
        assert values[:4] == [0.0, 0.0, 0.0, 0.0]
        assert values[5] == 0.0

    def test_deterministic(self, stop_words, lexicon):
        a = extract_features(QUESTION, "candy", stop_words, lexicon)
        b = extract_features(QUESTION, "candy", stop_words, lexicon)
        assert a == b
