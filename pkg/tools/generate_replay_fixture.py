#!/usr/bin/env python3
"""Generate the bundled 30-day replay fixture and its golden event dump.

Writes:
  src/healthmonitor/data/replay_sources.tsv   feed source list
  src/healthmonitor/data/replay_stories.jsonl ~60 stories over 30 days
  src/healthmonitor/data/golden_events.tsv    frozen hourly-replay output

The golden dump is produced by the pipeline itself at generation time and
then frozen; the regression test replays the same stream and must reproduce
it byte for byte.
"""

import random
from datetime import datetime, timedelta, timezone
from pathlib import Path

from healthmonitor.classifier import parse_labeled_corpus, train
from healthmonitor.detector import dump_events, replay_hourly
from healthmonitor.feeds import Genre, NewsStory, parse_sources, story_id
from healthmonitor.ontology import load_bundled_ontology
from healthmonitor.store import StoryStore, story_to_record
from healthmonitor.tagger import GazetteerTagger, build_gazetteer

DATA = Path(__file__).resolve().parent.parent / "src" / "healthmonitor" / "data"

START = datetime(2007, 10, 12, 0, 0, tzinfo=timezone.utc)
END = datetime(2007, 11, 11, 0, 0, tzinfo=timezone.utc)

SOURCES_TSV = "\n".join(
    [
        "press-world\thttp://press.test/world\tPress\t",
        "press-uk\thttp://press.test/uk\tPress\tc-gb",
        "official-who\thttp://official.test/who\tOfficial\t",
        "business-wire\thttp://business.test/wire\tBusiness\t",
        "mixed-topix\thttp://mixed.test/topix\tMixed\t",
    ]
)

DISEASES = [
    "cholera", "rabies", "dengue fever", "bird flu", "measles", "equine influenza",
    "yellow fever", "typhoid fever", "malaria", "whooping cough",
]
PLACES = [
    "Dhaka", "Beijing Shi", "Camden", "Isle of Wight", "Kerala", "Punjab",
    "Queensland", "Bayern", "Toscana", "Australia", "China", "Bangladesh",
]
COUNTRY_FOLLOWUPS = {
    "Camden": "Australia",
    "Dhaka": "Bangladesh",
    "Beijing Shi": "China",
    "Queensland": "Australia",
}
IRRELEVANT = [
    ("Share prices climb on earnings", "Markets rallied as quarterly earnings beat analyst forecasts."),
    ("Cup final goes to extra time", "Fans packed the stadium for a dramatic season finale."),
    ("New rail line opens downtown", "Commuters welcomed the long-delayed transit extension."),
    ("Auction sets record for sculpture", "The bronze piece sold for three times its estimate."),
]


def build_stories(rng, ontology):
    stories = []
    cursor = START + timedelta(hours=6)
    index = 0
    while cursor < END and index < 60:
        roll = rng.random()
        source = rng.choice(["press-world", "press-uk", "official-who", "business-wire", "mixed-topix"])
        genre = {
            "press-world": Genre.PRESS, "press-uk": Genre.PRESS, "official-who": Genre.OFFICIAL,
            "business-wire": Genre.BUSINESS, "mixed-topix": Genre.MIXED,
        }[source]
        if roll < 0.72:
            disease = rng.choice(DISEASES)
            place = rng.choice(PLACES)
            assert ontology.lookup_location_candidates(place), place
            headline = f"{disease.capitalize()} outbreak reported in {place}"
            follow = COUNTRY_FOLLOWUPS.get(place)
            body = (
                f"Health officials in {place} confirmed new cases of {disease} this week. "
                + (f"Authorities across {follow} stepped up screening. " if follow else "")
                + "Surveillance teams were deployed and hospitals reported rising admissions. "
                "Local leaders appealed for calm while the outbreak investigation continues."
            )
            if place == "Isle of Wight":
                source, genre = "press-uk", Genre.PRESS
        else:
            headline, body = rng.choice(IRRELEVANT)
        url = f"http://replay.test/{index}"
        stories.append(
            NewsStory(
                id=story_id(url, headline),
                source_id=source,
                url=url,
                headline=headline,
                body=body,
                published_at=cursor,
                fetched_at=cursor,
                genre=genre,
            )
        )
        index += 1
        cursor += timedelta(hours=rng.choice([6, 9, 12, 15]))
    # a duplicate-headline pair two hours apart, for the initial-headline option
    base = stories[4]
    dup_url = "http://replay.test/dup"
    stories.append(
        NewsStory(
            id=story_id(dup_url, base.headline),
            source_id="mixed-topix",
            url=dup_url,
            headline=base.headline,
            body=base.body,
            published_at=base.published_at + timedelta(hours=2),
            fetched_at=base.published_at + timedelta(hours=2),
            genre=Genre.MIXED,
        )
    )
    return stories


def main() -> None:
    rng = random.Random(1012)
    ontology = load_bundled_ontology()
    tagger = GazetteerTagger(build_gazetteer(ontology))

    (DATA / "replay_sources.tsv").write_text(SOURCES_TSV + "\n", encoding="utf-8")
    stories = build_stories(rng, ontology)
    with open(DATA / "replay_stories.jsonl", "w", encoding="utf-8") as fh:
        for story in stories:
            fh.write(story_to_record(story) + "\n")

    with open(DATA / "corpus.tsv", encoding="utf-8") as fh:
        model = train(parse_labeled_corpus(fh), entity_tagger=tagger)
    store = StoryStore(DATA / "replay_stories.jsonl")
    sources = {s.id: s for s in parse_sources(SOURCES_TSV.splitlines())}
    events = replay_hourly(store, ontology, model, tagger, START, END, sources=sources)
    (DATA / "golden_events.tsv").write_text(dump_events(events, ontology) + "\n", encoding="utf-8")
    print(f"{len(stories)} stories, {len(events)} events across replay")


if __name__ == "__main__":
    main()
