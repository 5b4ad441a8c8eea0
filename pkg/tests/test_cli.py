"""Smoke tests for the command-line interface."""

import json
from datetime import timedelta

from click.testing import CliRunner

from healthmonitor.cli import main
from healthmonitor.store import story_to_record
from conftest import T0, make_story

CORPUS = (
    "relevant\tcholera outbreak spreads\tofficials confirmed cholera cases in Dhaka\n"
    "irrelevant\tmarkets rally\tshares climbed after strong results\n"
    "relevant\trabies warning\tnew rabies cases were reported this week\n"
    "irrelevant\tcup final tonight\tfans packed the stadium for the final\n"
)


def test_ontology_stats_reports_bundled_counts():
    result = CliRunner().invoke(main, ["ontology-stats"])
    assert result.exit_code == 0, result.output
    assert "diseases: 50" in result.output
    assert "countries: 243" in result.output
    assert "sub-countries: 4025" in result.output


def test_train_then_run_cycle(tmp_path):
    runner = CliRunner()
    corpus_file = tmp_path / "corpus.tsv"
    corpus_file.write_text(CORPUS, encoding="utf-8")
    model_path = tmp_path / "model.json"
    result = runner.invoke(main, ["train", str(corpus_file), "--out", str(model_path)])
    assert result.exit_code == 0, result.output
    assert json.loads(model_path.read_text())["format_version"] == 1

    store_path = tmp_path / "stories.jsonl"
    story = make_story(
        "cholera outbreak in Dhaka",
        "Officials in Dhaka confirmed cholera cases across Bangladesh.",
        published_at=T0 - timedelta(hours=1),
    )
    store_path.write_text(story_to_record(story) + "\n", encoding="utf-8")

    events_path = tmp_path / "events.jsonl"
    result = runner.invoke(
        main,
        [
            "run-cycle",
            "--store", str(store_path),
            "--model", str(model_path),
            "--events", str(events_path),
            "--now", T0.isoformat(),
        ],
    )
    assert result.exit_code == 0, result.output
    assert "dis-cholera" in result.output
