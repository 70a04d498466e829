"""Unit tests for the rule-table lemmatizer"""

import pytest

from kepr.core.lemmatizer import lemmatize


@pytest.mark.unit
class TestLemmatize:
    """Test suffix rules and irregular forms"""

    @pytest.mark.parametrize(
        "token,lemma",
        [
            ("bikes", "bike"),
            ("cokes", "coke"),
            ("candies", "candy"),
            ("boxes", "box"),
            ("glasses", "glasses"),
            ("matches", "match"),
            ("dishes", "dish"),
            ("socks", "sock"),
            ("athletes", "athlete"),
            ("potatoes", "potato"),
            ("tomatoes", "tomato"),
            ("heroes", "hero"),
            ("horses", "horse"),
            ("shoes", "shoe"),
            ("toes", "toe"),
            ("goes", "go"),
        ],
    )
    def test_plural_suffixes(self, token, lemma):
        """Happy path: regular plurals"""
        assert lemmatize(token) == lemma

    @pytest.mark.parametrize(
        "token,lemma",
        [("children", "child"), ("people", "person"), ("knives", "knife"), ("teeth", "tooth")],
    )
    def test_irregular_forms(self, token, lemma):
        assert lemmatize(token) == lemma

    @pytest.mark.parametrize(
        "token,lemma",
        [("running", "run"), ("making", "make"), ("jumped", "jump"), ("screaming", "scream")],
    )
    def test_verb_forms(self, token, lemma):
        assert lemmatize(token) == lemma

    @pytest.mark.parametrize("token", ["bus", "glass", "basis", "need", "ring", "is"])
    def test_words_left_alone(self, token):
        """Edge case: endings that look like suffixes but are not"""
        expected = "be" if token == "is" else token
        assert lemmatize(token) == expected

    def test_short_stem_kept(self):
        """Edge case: stems shorter than three characters are not produced"""
        assert lemmatize("gas") == "gas"
        assert lemmatize("red") == "red"

    def test_exception_words(self):
        assert lemmatize("clothes") == "clothes"
        assert lemmatize("something") == "something"

    def test_es_plural_meets_singular(self):
        """Plural and singular of an -oes noun share one lemma"""
        assert lemmatize("potatoes") == lemmatize("potato") == "potato"
