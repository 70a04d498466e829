"""Integration tests for the kepr command line

Each subcommand is run through ``main`` with files under tmp_path; exit codes
follow the error class (0 ok, 1 usage/config, 2 data, 3 backend).
"""

import json
import shutil

import pytest

from kepr.infrastructure.persistence import iter_records
from kepr.main import main


def _records(path):
    return [record for _, record in iter_records(path)]


def _stdout_records(capsys):
    return [json.loads(line) for line in capsys.readouterr().out.splitlines() if line]


@pytest.fixture
def workdir(tmp_path, fixtures_dir):
    """Copy of the fixtures so relative config paths resolve inside tmp_path."""
    for name in (
        "dataset.jsonl",
        "dictionary.jsonl",
        "idf.jsonl",
        "mock_generator.json",
        "pipeline_config.json",
    ):
        shutil.copy(fixtures_dir / name, tmp_path / name)
    return tmp_path


@pytest.mark.integration
class TestRetrieverCommands:
    """Test keyword, rewrite and retrieval subcommands"""

    def test_build_idf(self, workdir):
        out = workdir / "built_idf.jsonl"
        assert main(["build-idf", "--in", str(workdir / "dataset.jsonl"), "--out", str(out)]) == 0
        records = _records(out)
        assert records[0] == {"num_questions": 3}
        assert {r["token"] for r in records[1:]} >= {"athlete", "monk", "house"}

    def test_extract_keywords_with_gold(self, workdir, capsys):
        gold = workdir / "gold.jsonl"
        gold.write_text(
            '{"id": "q1", "keywords": ["athlete", "refrigerator"]}\n'
            '{"id": "q2", "keywords": ["monk"]}\n'
            '{"id": "q3", "keywords": ["children"]}\n',
            encoding="utf-8",
        )
        code = main(
            ["extract-keywords", "--config", str(workdir / "pipeline_config.json"),
             "--gold", str(gold)]
        )
        assert code == 0
        records = _stdout_records(capsys)
        assert [k["token"] for k in records[0]["keywords"]] == ["athlete", "refrigerator"]
        assert records[-1] == {"metric": "keyword_accuracy@2", "mean": 1.0}

    def test_rewrite(self, workdir, capsys):
        assert main(["rewrite", "--in", str(workdir / "dataset.jsonl")]) == 0
        records = _stdout_records(capsys)
        assert records[2]["rewritten"] == "One way to tell a house has children is"
        assert records[2]["prefix"] == "how can you tell"

    def test_build_index(self, workdir):
        out = workdir / "index.jsonl"
        code = main(["build-index", "--dump", str(workdir / "dictionary.jsonl"), "--out", str(out)])
        assert code == 0
        assert [r["lemma"] for r in _records(out)] == [
            "athlete", "refrigerator", "monk", "probably"
        ]

    def test_retrieve(self, workdir):
        out = workdir / "knowledge.jsonl"
        config = str(workdir / "pipeline_config.json")
        code = main(["retrieve", "--config", config, "--out", str(out)])
        assert code == 0
        records = _records(out)
        assert [item["keyword"] for item in records[0]["knowledge"]] == ["athlete", "refrigerator"]
        assert records[2]["knowledge"] == []
        assert records[2]["rendered"] == ""


@pytest.mark.integration
class TestStageChain:
    """Test generate, dedup, rank and evaluate chained through files"""

    def test_chain_matches_pipeline(self, workdir):
        config = str(workdir / "pipeline_config.json")
        knowledge = workdir / "knowledge.jsonl"
        candidates = workdir / "candidates.jsonl"
        deduped = workdir / "deduped.jsonl"
        ranked = workdir / "ranked.jsonl"
        piped = workdir / "piped.jsonl"

        assert main(["retrieve", "--config", config, "--out", str(knowledge)]) == 0
        assert main(
            ["generate", "--config", config, "--in", str(knowledge), "--out", str(candidates)]
        ) == 0
        assert main(
            ["dedup", "--config", config, "--in", str(candidates), "--out", str(deduped)]
        ) == 0
        assert main(["rank", "--config", config, "--in", str(deduped), "--out", str(ranked)]) == 0
        assert main(["pipeline", "--config", config, "--out", str(piped)]) == 0

        generated = _records(candidates)[0]
        assert generated["prompt"].startswith("<BOS> athlete: ")
        assert len(generated["candidates"]) == 18
        assert len(_records(deduped)[0]["candidates"]) == 12
        assert ranked.read_bytes() == piped.read_bytes()

    def test_evaluate(self, workdir, capsys):
        config = str(workdir / "pipeline_config.json")
        predictions = workdir / "predictions.jsonl"
        assert main(["pipeline", "--config", config, "--out", str(predictions)]) == 0
        capsys.readouterr()

        assert main(
            ["evaluate", "--config", config, "--predictions", str(predictions),
             "--schemes", "Ans@12"]
        ) == 0
        records = _stdout_records(capsys)
        assert records[0] == {"policy": "exact-normalized", "primary_metric": "Inc@3"}
        means = {r["metric"]: r["mean"] for r in records if "metric" in r}
        assert set(means) == {
            "Ans@1", "Ans@3", "Ans@5", "Ans@10", "Inc@1", "Inc@3", "Inc@5", "Ans@12"
        }
        per_question = {r["id"]: r["scores"] for r in records if "id" in r}
        # soda is the third miss under exact matching, so five answers are kept
        assert per_question["q1"]["Inc@3"] == pytest.approx(84 / 91)
        assert per_question["q3"]["Ans@1"] == 1.0

    def test_ranker_training_chain(self, workdir, capsys):
        config = str(workdir / "pipeline_config.json")
        corpus = workdir / "corpus.jsonl"
        model = workdir / "model.json"
        assert main(
            ["build-ranker-corpus", "--config", config, "--n", "1", "--out", str(corpus)]
        ) == 0
        labels = [r["label"] for r in _records(corpus)]
        assert labels.count(1) == labels.count(0) == 3

        assert main(
            ["train-scorer", "--corpus", str(corpus), "--epochs", "20", "--out", str(model),
             "--validation", str(corpus)]
        ) == 0
        [validation] = _stdout_records(capsys)
        assert validation["split"] == "validation"
        assert validation["instances"] == 6.0

        deduped = workdir / "deduped.jsonl"
        deduped.write_text(
            json.dumps(
                {
                    "id": "q2",
                    "question": "Name something a monk probably would not own.",
                    "candidates": [
                        {"text": "car", "confidence": -0.3},
                        {"text": "monk", "confidence": -0.4},
                    ],
                }
            )
            + "\n",
            encoding="utf-8",
        )
        assert main(["rank", "--in", str(deduped), "--model", str(model)]) == 0
        [prediction] = _stdout_records(capsys)
        assert sorted(prediction["ranked_answers"]) == ["car", "monk"]


@pytest.mark.integration
class TestExitCodes:
    """Test error classes map to exit codes"""

    def test_unknown_subcommand(self):
        assert main(["summon"]) == 1

    def test_missing_required_flag(self):
        assert main(["dedup"]) == 1

    def test_unknown_config_key(self, tmp_path):
        config = tmp_path / "config.json"
        config.write_text('{"beam_widht": 3}', encoding="utf-8")
        assert main(["rewrite", "--config", str(config), "--in", str(config)]) == 1

    def test_invalid_hyperparameter_flag(self, workdir):
        code = main(
            ["pipeline", "--config", str(workdir / "pipeline_config.json"), "--workers", "0"]
        )
        assert code == 1

    def test_bad_scheme(self, workdir):
        code = main(
            ["evaluate", "--config", str(workdir / "pipeline_config.json"),
             "--predictions", str(workdir / "dataset.jsonl"), "--schemes", "Top@3"]
        )
        assert code == 1

    def test_missing_out(self, workdir):
        assert main(["build-idf", "--in", str(workdir / "dataset.jsonl")]) == 1

    def test_malformed_input(self, workdir):
        bad = workdir / "bad.jsonl"
        bad.write_text('{"id": "q1", "question": "fine"}\n{broken\n', encoding="utf-8")
        assert main(["rewrite", "--in", str(bad)]) == 2

    def test_prediction_without_ground_truth(self, workdir):
        predictions = workdir / "predictions.jsonl"
        predictions.write_text('{"id": "zz", "ranked_answers": ["a"]}\n', encoding="utf-8")
        code = main(
            ["evaluate", "--config", str(workdir / "pipeline_config.json"),
             "--predictions", str(predictions)]
        )
        assert code == 2

    def test_rank_rejects_undeduplicated_candidates(self, workdir):
        """Answers equal after normalization are a data error, not a crash"""
        candidates = workdir / "raw.jsonl"
        candidates.write_text(
            json.dumps(
                {
                    "id": "q2",
                    "question": "Name something a monk probably would not own.",
                    "candidates": [
                        {"text": "car", "confidence": -0.3},
                        {"text": "Car", "confidence": -0.5},
                    ],
                }
            )
            + "\n",
            encoding="utf-8",
        )
        assert main(["rank", "--in", str(candidates)]) == 2

    def test_backend_failure(self, workdir, backend_command, monkeypatch):
        monkeypatch.setenv("KEPR_GENERATOR_KIND", "subprocess")
        monkeypatch.setenv("KEPR_GENERATOR_ENDPOINT", backend_command("error"))
        code = main(["generate", "--config", str(workdir / "pipeline_config.json")])
        assert code == 3

    def test_pipeline_logs_backend_failures(self, workdir, backend_command, monkeypatch):
        """Failed questions are logged; the run succeeds with empty predictions"""
        monkeypatch.setenv("KEPR_GENERATOR_KIND", "subprocess")
        monkeypatch.setenv("KEPR_GENERATOR_ENDPOINT", backend_command("error"))
        out, errors = workdir / "predictions.jsonl", workdir / "errors.jsonl"
        config = str(workdir / "pipeline_config.json")
        code = main(["pipeline", "--config", config, "--out", str(out), "--errors", str(errors)])
        assert code == 0
        assert [r["ranked_answers"] for r in _records(out)] == [[], [], []]
        assert [r["stage"] for r in _records(errors)] == ["generate"] * 3

    def test_seed_override(self, workdir):
        config = str(workdir / "pipeline_config.json")
        first, second = workdir / "a.jsonl", workdir / "b.jsonl"
        args = ["build-ranker-corpus", "--config", config, "--seed", "5", "--out"]
        assert main([*args, str(first)]) == 0
        assert main([*args, str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()
