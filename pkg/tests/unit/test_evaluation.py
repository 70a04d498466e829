"""Unit tests for weighted-accuracy evaluation

Hand-worked examples on the athlete question, the truncation schemes, and a
property check against an independent set-based formulation of the metric.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kepr.core.evaluation import (
    ClusterMatcher,
    accuracy_of_matches,
    evaluate,
    match_answer,
    selection_accuracy,
    truncate,
    truncation_length,
    weighted_accuracy,
)
from kepr.exceptions import DataError
from kepr.models import (
    AnswerCluster,
    GroundTruthClusters,
    MatchMode,
    MatchPolicy,
    Prediction,
    StopWordList,
    TruncationScheme,
)

ANS1, ANS3, INC1, INC3 = (
    TruncationScheme.parse(name) for name in ("Ans@1", "Ans@3", "Inc@1", "Inc@3")
)

VOCAB = ["alpha", "bravo", "charlie", "delta"]

PREFIX_CLUSTERS = GroundTruthClusters(
    question_id="q1",
    clusters=[
        AnswerCluster(weight=36, answers=["chocolate"]),
        AnswerCluster(weight=24, answers=["coke"]),
        AnswerCluster(weight=24, answers=["gloves"]),
        AnswerCluster(weight=7, answers=["medal"]),
    ],
)
PREFIX_POOL = ["chocolate", "coke", "gloves", "medal", "pizza", "soup", "socks", "cake"]


@pytest.fixture
def exact(stop_words) -> MatchPolicy:
    return MatchPolicy(stop_words=stop_words)


@pytest.fixture
def synonym(stop_words, lexicon) -> MatchPolicy:
    return MatchPolicy(mode=MatchMode.SYNONYM_AUGMENTED, stop_words=stop_words, lexicon=lexicon)


@pytest.mark.unit
class TestMatching:
    """Test cluster membership under both policies"""

    def test_exact_normalized(self, athlete_clusters, exact):
        assert match_answer("Chocolate", athlete_clusters, exact) == 0
        assert match_answer("the junk-food", athlete_clusters, exact) == 0
        assert match_answer("cokes", athlete_clusters, exact) == 1
        assert match_answer("soda", athlete_clusters, exact) is None

    def test_synonym_augmented(self, athlete_clusters, synonym):
        """Happy path: a synonym of a gold answer matches its cluster"""
        assert match_answer("soda", athlete_clusters, synonym) == 1
        assert match_answer("clothing", athlete_clusters, synonym) == 2
        assert match_answer("purse", athlete_clusters, synonym) == 3

    def test_stop_word_answer_never_matches(self, athlete_clusters, exact):
        assert match_answer("the", athlete_clusters, exact) is None

    def test_first_matching_cluster_wins(self, stop_words):
        truth = GroundTruthClusters(
            question_id="q",
            clusters=[
                AnswerCluster(weight=10, answers=["beer"]),
                AnswerCluster(weight=5, answers=["beers"]),
            ],
        )
        assert match_answer("beer", truth, MatchPolicy(stop_words=stop_words)) == 0


@pytest.mark.unit
class TestTruncation:
    """Test Ans@k and Inc@k"""

    def test_ans_at_k(self):
        assert truncation_length([0, None, 1, None], ANS3) == 3
        assert truncation_length([0], ANS3) == 1

    def test_inc_at_k_cuts_before_kth_wrong(self):
        matches = [None, 0, None, 1, None, 2]
        assert truncation_length(matches, INC1) == 0
        assert truncation_length(matches, TruncationScheme.parse("Inc@2")) == 2
        assert truncation_length(matches, INC3) == 4

    def test_inc_at_k_fewer_wrong_keeps_all(self):
        assert truncation_length([0, None, 1], INC3) == 3

    def test_truncate(self, athlete_clusters, exact):
        ranked = ["beer", "ice cream", "chocolate", "socks", "gloves", "pizza", "medal"]
        assert truncate(ranked, athlete_clusters, INC3, exact) == ranked[:3]
        assert truncate(ranked, athlete_clusters, ANS1, exact) == ["beer"]

    @settings(max_examples=500, derandomize=True, deadline=None)
    @given(
        ranked=st.lists(st.sampled_from(PREFIX_POOL), max_size=12, unique=True),
        k=st.integers(min_value=1, max_value=4),
    )
    def test_truncation_is_prefix_of_next_k(self, ranked, k):
        """Raising k only ever extends the truncated list"""
        policy = MatchPolicy(stop_words=StopWordList())
        for kind in ("Inc", "Ans"):
            short, long = (TruncationScheme.parse(f"{kind}@{n}") for n in (k, k + 1))
            shorter = truncate(ranked, PREFIX_CLUSTERS, short, policy)
            longer = truncate(ranked, PREFIX_CLUSTERS, long, policy)
            assert longer[: len(shorter)] == shorter


@pytest.mark.unit
class TestWeightedAccuracy:
    """Test earned over ideal weight"""

    def test_perfect_list(self, athlete_clusters, exact):
        ranked = ["chocolate", "coke", "gloves", "medal"]
        assert weighted_accuracy(ranked, athlete_clusters, exact) == 1.0

    def test_hand_worked(self, athlete_clusters, exact):
        """Happy path: [wrong, 24, 36] over the three heaviest weights"""
        score = weighted_accuracy(["pizza", "alcohol", "chocolate"], athlete_clusters, exact)
        assert score == pytest.approx(60 / 84)

    def test_cluster_credited_once(self, athlete_clusters, exact):
        score = weighted_accuracy(["chocolate", "junk food"], athlete_clusters, exact)
        assert score == pytest.approx(36 / 60)

    def test_ideal_has_no_weight_beyond_cluster_count(self, athlete_clusters, exact):
        ranked = ["chocolate", "coke", "gloves", "medal", "pizza", "soup"]
        assert weighted_accuracy(ranked, athlete_clusters, exact) == 1.0

    def test_empty_list(self, athlete_clusters, exact):
        """Edge case: Inc@1 with a wrong first answer scores zero"""
        assert weighted_accuracy([], athlete_clusters, exact) == 0.0

    def test_no_clusters(self, exact):
        truth = GroundTruthClusters(question_id="q")
        assert weighted_accuracy(["beer"], truth, exact) == 0.0

    def test_worked_example_ans3(self, athlete_clusters, exact):
        """Happy path: [cluster-24, unmatched, cluster-7] earns 31 of the three heaviest weights"""
        ranked = ["coke", "pizza", "medal", "chocolate"]
        truncated = truncate(ranked, athlete_clusters, ANS3, exact)
        assert truncated == ["coke", "pizza", "medal"]
        assert abs(weighted_accuracy(truncated, athlete_clusters, exact) - 31 / 84) <= 1e-12

    @settings(max_examples=1000, derandomize=True, deadline=None)
    @given(
        weights=st.lists(st.integers(min_value=1, max_value=50), min_size=1, max_size=4),
        picks=st.lists(st.integers(min_value=-1, max_value=7), max_size=6),
    )
    def test_matches_reward_matrix(self, weights, picks):
        """Explicit reward matrix with single credit per cluster, duplicates included"""
        truth = GroundTruthClusters(
            question_id="q",
            clusters=[
                AnswerCluster(weight=w, answers=[VOCAB[i], f"{VOCAB[i]} variant"])
                for i, w in enumerate(weights)
            ],
        )
        ranked = []
        for position, pick in enumerate(picks):
            cluster, variant = divmod(pick, 2)
            if pick >= 0 and cluster < len(weights):
                ranked.append(VOCAB[cluster] if variant == 0 else f"{VOCAB[cluster]} variant")
            else:
                ranked.append(f"wrong{position}")

        ordered = truth.clusters
        reward = [[0] * len(ordered) for _ in ranked]
        credited = set()
        for i, text in enumerate(ranked):
            for j, cluster in enumerate(ordered):
                if text in cluster.answers and j not in credited:
                    reward[i][j] = cluster.weight
                    credited.add(j)
        ideal_weights = [c.weight for c in ordered] + [0] * len(ranked)
        ideal = sum(ideal_weights[: len(ranked)])
        earned = sum(sum(row) for row in reward)
        expected = earned / ideal if ranked and ideal else 0.0

        policy = MatchPolicy(stop_words=StopWordList())
        assert abs(weighted_accuracy(ranked, truth, policy) - expected) <= 1e-12
        assert 0.0 <= expected <= 1.0


@pytest.mark.unit
class TestEvaluate:
    """Test report aggregation"""

    def test_per_question_and_means(self, athlete_clusters, exact):
        monk = GroundTruthClusters(
            question_id="q2",
            clusters=[
                AnswerCluster(weight=30, answers=["car"]),
                AnswerCluster(weight=20, answers=["phone"]),
            ],
        )
        predictions = [
            Prediction(question_id="q1", ranked_answers=["chocolate", "pizza", "coke"]),
            Prediction(question_id="q2", ranked_answers=["wife", "car"]),
        ]
        report = evaluate(predictions, [athlete_clusters, monk], [ANS1, INC1, INC3], exact)
        assert report.policy == MatchMode.EXACT_NORMALIZED
        assert report.primary_metric == "Inc@3"
        assert report.per_question["q1"] == pytest.approx(
            {"Ans@1": 1.0, "Inc@1": 1.0, "Inc@3": 60 / 84}
        )
        assert report.per_question["q2"] == pytest.approx(
            {"Ans@1": 0.0, "Inc@1": 0.0, "Inc@3": 30 / 50}
        )
        assert report.per_metric["Inc@3"] == pytest.approx((60 / 84 + 30 / 50) / 2)

    def test_default_schemes(self, athlete_clusters, exact):
        report = evaluate([Prediction(question_id="q1")], [athlete_clusters], policy=exact)
        assert list(report.per_metric) == [
            "Ans@1", "Ans@3", "Ans@5", "Ans@10", "Inc@1", "Inc@3", "Inc@5"
        ]
        assert all(v == 0.0 for v in report.per_metric.values())

    def test_unpredicted_questions_left_out(self, athlete_clusters, exact):
        other = GroundTruthClusters(
            question_id="q9", clusters=[AnswerCluster(weight=1, answers=["x"])]
        )
        predictions = [Prediction(question_id="q1", ranked_answers=["chocolate"])]
        report = evaluate(predictions, [athlete_clusters, other], [ANS1], exact)
        assert report.per_metric == {"Ans@1": 1.0}

    def test_unknown_prediction_ids(self, athlete_clusters, exact):
        """Error case: every id without ground truth is listed"""
        predictions = [Prediction(question_id="zz"), Prediction(question_id="yy")]
        with pytest.raises(DataError, match="zz, yy"):
            evaluate(predictions, [athlete_clusters], [ANS1], exact)

    def test_no_predictions(self, athlete_clusters, exact):
        report = evaluate([], [athlete_clusters], [ANS1], exact)
        assert report.per_metric == {"Ans@1": 0.0}

    def test_matcher_reused_across_schemes(self, athlete_clusters, exact):
        matcher = ClusterMatcher(athlete_clusters, exact)
        matches = matcher.match_all(["beer", "x", "medal"])
        assert matches == [None, None, 3]
        assert accuracy_of_matches(matches, athlete_clusters.weights) == pytest.approx(7 / 84)


@pytest.mark.unit
class TestSelectionAccuracy:
    def test_fraction_correct(self):
        assert selection_accuracy([0, 1, 2, 0], [0, 1, 0, 1]) == 0.5

    def test_misaligned(self):
        with pytest.raises(DataError):
            selection_accuracy([0], [0, 1])
