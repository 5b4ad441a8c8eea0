"""Command-line entry points: fetch feeds, train, run cycles, replay, evaluate, serve."""

from __future__ import annotations

import json
import logging
import os
import sys
from datetime import datetime, timedelta, timezone
from pathlib import Path

import click

from .api import EventStore, create_app
from .classifier import TopicClassifier, parse_labeled_corpus, train as train_model
from .detector import DEFAULT_TOP_K, CycleDiagnostics, dump_events, run_cycle
from .evaluation import pair_precision_recall, parse_gold_pairs, render_percent, report_table
from .feeds import fetch_and_parse, parse_sources
from .ontology import load_bundled_ontology, load_ontology
from .store import StoryStore
from .tagger import GazetteerTagger, build_gazetteer

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = {
    "port": 8040,
    "data_dir": "./monitor-data",
    "sources_file": None,
    "model_file": None,
    "top_k": DEFAULT_TOP_K,
    "threshold_mode": "rank",
    "ui_dir": None,
}


def load_config(path: str | None) -> dict:
    config = dict(DEFAULT_CONFIG)
    if path:
        with open(path, encoding="utf-8") as fh:
            config.update(json.load(fh))
    if os.environ.get("GHM_PORT"):
        config["port"] = int(os.environ["GHM_PORT"])
    if os.environ.get("GHM_DATA_DIR"):
        config["data_dir"] = os.environ["GHM_DATA_DIR"]
    return config


def _load_ontology(diseases: str | None, geo: str | None):
    if diseases and geo:
        with open(diseases, encoding="utf-8") as dfh, open(geo, encoding="utf-8") as gfh:
            return load_ontology(dfh, gfh)
    return load_bundled_ontology()


def _now(value: str | None) -> datetime:
    if value:
        return datetime.fromisoformat(value.replace("Z", "+00:00")).astimezone(timezone.utc)
    return datetime.now(timezone.utc)


@click.group()
@click.option("--verbose", is_flag=True, help="Enable debug logging.")
def main(verbose: bool):
    logging.basicConfig(level=logging.DEBUG if verbose else logging.INFO, stream=sys.stderr)


@main.command("ontology-stats")
@click.option("--diseases", type=click.Path(exists=True), help="Disease ontology file.")
@click.option("--geo", type=click.Path(exists=True), help="Geo ontology file.")
def ontology_stats(diseases, geo):
    """Load the ontology and report record counts."""
    ontology = _load_ontology(diseases, geo)
    click.echo(f"diseases: {len(ontology.diseases)}")
    click.echo(f"countries: {ontology.country_count}")
    click.echo(f"sub-countries: {ontology.sub_country_count}")
    click.echo(f"disease synonyms indexed: {len(ontology.disease_synonym_index)}")
    click.echo(f"location names indexed: {len(ontology.location_name_index)}")


@main.command()
@click.argument("sources_file", type=click.Path(exists=True))
@click.option("--store", "store_path", type=click.Path(), required=True, help="Story log path.")
@click.option("--now", "now_opt", default=None, help="Override the clock (ISO timestamp).")
def fetch(sources_file, store_path, now_opt):
    """Fetch every enabled source once and append new stories to the store."""
    import urllib.request

    def transport(url: str) -> bytes:
        with urllib.request.urlopen(url, timeout=30) as resp:
            return resp.read()

    now = _now(now_opt)
    store = StoryStore(Path(store_path))
    with open(sources_file, encoding="utf-8") as fh:
        sources = parse_sources(fh)
    total = 0
    for source in sources:
        if not source.poll_enabled:
            continue
        try:
            stories = fetch_and_parse(source, transport, now)
        except Exception as exc:
            logger.error("source %s failed: %s", source.id, exc)
            continue
        total += store.append(stories)
    click.echo(f"inserted {total} new stories ({len(store)} total)")


@main.command()
@click.argument("corpus_file", type=click.Path(exists=True))
@click.option("--out", "out_path", type=click.Path(), required=True, help="Model output path.")
def train(corpus_file, out_path):
    """Train the relevance classifier on a labeled corpus."""
    ontology = load_bundled_ontology()
    tagger = GazetteerTagger(build_gazetteer(ontology))
    with open(corpus_file, encoding="utf-8") as fh:
        corpus = parse_labeled_corpus(fh)
    model = train_model(corpus, entity_tagger=tagger)
    Path(out_path).write_text(model.to_json(), encoding="utf-8")
    click.echo(f"trained on {len(corpus)} docs, vocabulary {len(model.vocabulary_)}")


@main.command("run-cycle")
@click.option("--store", "store_path", type=click.Path(exists=True), required=True)
@click.option("--model", "model_path", type=click.Path(exists=True), required=True)
@click.option("--events", "events_path", type=click.Path(), required=True, help="Event log path.")
@click.option("--sources", "sources_file", type=click.Path(exists=True), default=None)
@click.option("--now", "now_opt", default=None)
@click.option("--top-k", default=DEFAULT_TOP_K, show_default=True)
@click.option("--threshold-mode", type=click.Choice(["rank", "min_freq"]), default="rank")
def run_cycle_cmd(store_path, model_path, events_path, sources_file, now_opt, top_k, threshold_mode):
    """Run one detection cycle over the last 24 hours of stories."""
    now = _now(now_opt)
    ontology = load_bundled_ontology()
    tagger = GazetteerTagger(build_gazetteer(ontology))
    model = TopicClassifier.from_json(Path(model_path).read_text(encoding="utf-8"), entity_tagger=tagger)
    store = StoryStore(Path(store_path))
    sources = {}
    if sources_file:
        with open(sources_file, encoding="utf-8") as fh:
            sources = {s.id: s for s in parse_sources(fh)}
    diagnostics = CycleDiagnostics()
    events = run_cycle(
        store, ontology, model, tagger, now,
        top_k=top_k, threshold_mode=threshold_mode, sources=sources, diagnostics=diagnostics,
    )
    event_store = EventStore(Path(events_path))
    event_store.publish_cycle(events, now)
    click.echo(dump_events(events, ontology))
    logger.info(
        "cycle at %s: window=%d relevant=%d events=%d dropped=%d fallbacks=%d",
        now.isoformat(), diagnostics.window_size, diagnostics.relevant_count,
        len(events), len(diagnostics.dropped_pairs), len(diagnostics.fallback_resolutions),
    )


@main.command()
@click.option("--store", "store_path", type=click.Path(exists=True), required=True)
@click.option("--model", "model_path", type=click.Path(exists=True), required=True)
@click.option("--events", "events_path", type=click.Path(), default=None)
@click.option("--sources", "sources_file", type=click.Path(exists=True), default=None)
@click.option("--start", required=True, help="First cycle timestamp (ISO).")
@click.option("--end", required=True, help="Last cycle timestamp (ISO, inclusive).")
@click.option("--top-k", default=DEFAULT_TOP_K, show_default=True)
def replay(store_path, model_path, events_path, sources_file, start, end, top_k):
    """Replay hourly detection cycles over a stored stream and dump all events."""
    ontology = load_bundled_ontology()
    tagger = GazetteerTagger(build_gazetteer(ontology))
    model = TopicClassifier.from_json(Path(model_path).read_text(encoding="utf-8"), entity_tagger=tagger)
    store = StoryStore(Path(store_path))
    sources = {}
    if sources_file:
        with open(sources_file, encoding="utf-8") as fh:
            sources = {s.id: s for s in parse_sources(fh)}
    event_store = EventStore(Path(events_path)) if events_path else EventStore()

    cursor, stop = _now(start), _now(end)
    while cursor <= stop:
        events = run_cycle(store, ontology, model, tagger, cursor, top_k=top_k, sources=sources)
        if events:
            event_store.publish_cycle(events, cursor)
            click.echo(dump_events(events, ontology))
        cursor += timedelta(hours=1)


@main.command()
@click.argument("gold_file", type=click.Path(exists=True))
@click.argument("retrieved_file", type=click.Path(exists=True))
def evaluate(gold_file, retrieved_file):
    """Score retrieved (disease, location) pairs against a gold pair file."""
    with open(gold_file, encoding="utf-8") as fh:
        gold = parse_gold_pairs(fh)
    with open(retrieved_file, encoding="utf-8") as fh:
        retrieved = parse_gold_pairs(fh)
    reports = {}
    for window_id in sorted(set(gold) | set(retrieved)):
        report = pair_precision_recall(retrieved.get(window_id, set()), gold.get(window_id, set()))
        reports[window_id] = report
    click.echo(report_table(reports))
    for window_id, report in sorted(reports.items()):
        click.echo(
            f"{window_id}: precision {render_percent(report.precision)} "
            f"(window-relative recall {render_percent(report.recall)})"
        )


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--store", "store_path", type=click.Path(), default=None)
@click.option("--events", "events_path", type=click.Path(), default=None)
@click.option("--port", type=int, default=None)
def serve(config_path, store_path, events_path, port):
    """Serve the HTTP API (and UI bundle if configured)."""
    import uvicorn

    config = load_config(config_path)
    data_dir = Path(config["data_dir"])
    data_dir.mkdir(parents=True, exist_ok=True)
    ontology = load_bundled_ontology()
    store = StoryStore(Path(store_path) if store_path else data_dir / "stories.jsonl")
    event_store = EventStore(Path(events_path) if events_path else data_dir / "events.jsonl")
    ui_dir = Path(config["ui_dir"]) if config.get("ui_dir") else None
    app = create_app(ontology, store, event_store, ui_dir=ui_dir)
    uvicorn.run(app, host="0.0.0.0", port=port or config["port"])


if __name__ == "__main__":
    main()
