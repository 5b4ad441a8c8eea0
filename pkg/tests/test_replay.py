"""Regression test: hourly replay of the bundled 30-day story stream must
reproduce the frozen golden event dump exactly."""

from datetime import datetime, timezone
from importlib import resources

from healthmonitor.classifier import parse_labeled_corpus, train
from healthmonitor.detector import dump_events, replay_hourly
from healthmonitor.feeds import parse_sources
from healthmonitor.ontology import load_bundled_ontology
from healthmonitor.store import StoryStore, story_from_record
from healthmonitor.tagger import GazetteerTagger, build_gazetteer

REPLAY_START = datetime(2007, 10, 12, 0, 0, tzinfo=timezone.utc)
REPLAY_END = datetime(2007, 11, 11, 0, 0, tzinfo=timezone.utc)


def _data(name: str) -> str:
    return resources.files("healthmonitor.data").joinpath(name).read_text(encoding="utf-8")


def load_replay_parts():
    ontology = load_bundled_ontology()
    tagger = GazetteerTagger(build_gazetteer(ontology))
    model = train(parse_labeled_corpus(_data("corpus.tsv").splitlines()), entity_tagger=tagger)
    store = StoryStore()
    store.append(
        [story_from_record(line) for line in _data("replay_stories.jsonl").splitlines() if line.strip()]
    )
    sources = {s.id: s for s in parse_sources(_data("replay_sources.tsv").splitlines())}
    return ontology, tagger, model, store, sources


def test_replay_matches_golden_dump():
    ontology, tagger, model, store, sources = load_replay_parts()
    events = replay_hourly(store, ontology, model, tagger, REPLAY_START, REPLAY_END, sources=sources)
    assert events, "replay produced no events"
    golden = _data("golden_events.tsv").rstrip("\n")
    assert dump_events(events, ontology) == golden


def test_replay_stream_spans_thirty_days():
    _, _, _, store, _ = load_replay_parts()
    stories = store.select_window(REPLAY_START, REPLAY_END, now=REPLAY_END)
    assert len(stories) >= 50
    published = [s.published_at for s in stories]
    assert max(published) - min(published) >= (REPLAY_END - REPLAY_START) * 0.8
