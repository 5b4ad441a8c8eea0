"""Five-step disease/location pair detection over the 24-hour story window.

Step 1  count location/disease surface pairs per story
Step 2  sum pair frequencies across the window corpus
Step 3  rank and keep the top pairs (default cutoff 40)
Step 4  ground surfaces against the ontology, resolving location ambiguity
Step 5  re-map pairs onto stories whose first half mentions both terms

The cycle runs hourly over stories less than 24 hours old. One cycle runs at
a time; callers swap the published event set atomically.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from typing import Optional, Sequence

from .classifier import TopicClassifier
from .feeds import FeedSource, NewsStory
from .georesolve import ResolutionContext, ResolutionTier, ResolvedLocation, fallback_diagnostic, resolve
from .ontology import LocationKind, Ontology, normalize_term
from .store import StoryStore
from .tagger import AnnotatedEntity, EntityClass, TaggingFunction

WINDOW = timedelta(hours=24)
DEFAULT_TOP_K = 40

PairKey = tuple[str, str]  # (location_surface, disease_surface), normalized


@dataclass(frozen=True)
class PairCandidate:
    location_surface: str
    disease_surface: str
    story_freq: int


@dataclass
class CorpusFrequencyTable:
    freqs: dict[PairKey, int] = field(default_factory=dict)
    story_ids: dict[PairKey, list[str]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.freqs)


@dataclass(frozen=True)
class GroundedPair:
    disease: str  # ontology disease id when grounded, else raw surface
    disease_grounded: bool
    location_id: str
    location_surface: str
    corpus_freq: int
    resolution_tier: ResolutionTier


@dataclass(frozen=True)
class OutbreakEvent:
    disease: str
    disease_grounded: bool
    location_id: str
    location_surface: str
    corpus_freq: int
    story_ids: tuple[str, ...]
    first_seen: datetime
    detected_at: datetime


@dataclass
class CycleDiagnostics:
    window_size: int = 0
    relevant_count: int = 0
    dropped_pairs: list[str] = field(default_factory=list)
    fallback_resolutions: list[str] = field(default_factory=list)


def detect_story_pairs(story: NewsStory, entities: Sequence[AnnotatedEntity]) -> list[PairCandidate]:
    """Step 1: one candidate per distinct (location, disease) surface pair in a story.

    The pair frequency within a story is the smaller of the two surfaces'
    mention counts.
    """
    location_counts: Counter[str] = Counter()
    disease_counts: Counter[str] = Counter()
    for entity in entities:
        if entity.entity_class is EntityClass.LOCATION:
            location_counts[normalize_term(entity.surface)] += 1
        elif entity.entity_class is EntityClass.DISEASE:
            disease_counts[normalize_term(entity.surface)] += 1
    return [
        PairCandidate(loc, dis, min(location_counts[loc], disease_counts[dis]))
        for loc in sorted(location_counts)
        for dis in sorted(disease_counts)
    ]


def aggregate_frequencies(per_story: Sequence[tuple[str, Sequence[PairCandidate]]]) -> CorpusFrequencyTable:
    """Step 2: sum story frequencies per pair across the corpus."""
    table = CorpusFrequencyTable()
    for sid, candidates in per_story:
        for cand in candidates:
            key = (cand.location_surface, cand.disease_surface)
            table.freqs[key] = table.freqs.get(key, 0) + cand.story_freq
            table.story_ids.setdefault(key, [])
            if sid not in table.story_ids[key]:
                table.story_ids[key].append(sid)
    return table


def rank_top_pairs(
    table: CorpusFrequencyTable, top_k: int = DEFAULT_TOP_K, mode: str = "rank"
) -> list[tuple[PairKey, int]]:
    """Step 3: order by frequency descending (ties lexicographic) and cut.

    ``mode="rank"`` keeps the top_k pairs; ``mode="min_freq"`` instead keeps
    every pair with frequency >= top_k.
    """
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    ranked = sorted(table.freqs.items(), key=lambda item: (-item[1], item[0]))
    if mode == "rank":
        return ranked[:top_k]
    if mode == "min_freq":
        return [item for item in ranked if item[1] >= top_k]
    raise ValueError(f"unknown threshold mode {mode!r}")


def ground_pair(
    key: PairKey,
    freq: int,
    ontology: Ontology,
    context: ResolutionContext,
) -> Optional[GroundedPair]:
    """Step 4: ground the disease surface and resolve the location surface.

    Pairs whose location has no ontology candidate are dropped (events must
    be geocodable); an unknown disease surface is kept ungrounded.
    """
    location_surface, disease_surface = key
    candidates = ontology.lookup_location_candidates(location_surface)
    resolved = resolve(candidates, context)
    if resolved is None:
        return None
    concept = ontology.lookup_disease(disease_surface)
    return GroundedPair(
        disease=concept.id if concept else disease_surface,
        disease_grounded=concept is not None,
        location_id=resolved.location.id,
        location_surface=location_surface,
        corpus_freq=freq,
        resolution_tier=resolved.tier,
    )


def _first_half_entities(story: NewsStory, entities: Sequence[AnnotatedEntity]) -> list[AnnotatedEntity]:
    midpoint = len(story.text) / 2
    return [e for e in entities if e.start < midpoint]


def remap_events(
    grounded: Sequence[GroundedPair],
    window_stories: Sequence[tuple[NewsStory, Sequence[AnnotatedEntity]]],
    ontology: Ontology,
    detected_at: datetime,
) -> list[OutbreakEvent]:
    """Step 5: a story supports a pair only if both terms appear in its first half.

    Pairs with no supporting story are dropped. Pairs that ground to the same
    (disease, location) key merge their story lists and sum frequencies.
    """
    merged: dict[tuple[str, str], dict] = {}
    for pair in grounded:
        if pair.disease_grounded:
            disease_surfaces = ontology.diseases[pair.disease].synonyms
        else:
            disease_surfaces = {pair.disease}
        supporters = []
        for story, entities in window_stories:
            first_half = _first_half_entities(story, entities)
            disease_hit = any(
                e.entity_class is EntityClass.DISEASE and normalize_term(e.surface) in disease_surfaces
                for e in first_half
            )
            location_hit = any(
                e.entity_class is EntityClass.LOCATION
                and normalize_term(e.surface) == pair.location_surface
                for e in first_half
            )
            if disease_hit and location_hit:
                supporters.append(story)
        if not supporters:
            continue
        key = (pair.disease, pair.location_id)
        slot = merged.setdefault(
            key,
            {
                "disease_grounded": pair.disease_grounded,
                "location_surface": pair.location_surface,
                "corpus_freq": 0,
                "stories": {},
            },
        )
        slot["corpus_freq"] += pair.corpus_freq
        for story in supporters:
            slot["stories"][story.id] = story

    events = []
    for (disease, location_id), slot in sorted(merged.items()):
        stories = sorted(slot["stories"].values(), key=lambda s: (s.published_at, s.id))
        events.append(
            OutbreakEvent(
                disease=disease,
                disease_grounded=slot["disease_grounded"],
                location_id=location_id,
                location_surface=slot["location_surface"],
                corpus_freq=slot["corpus_freq"],
                story_ids=tuple(s.id for s in stories),
                first_seen=stories[0].published_at,
                detected_at=detected_at,
            )
        )
    return events


def _build_context(
    story_ids: Sequence[str],
    tagged: dict[str, tuple[NewsStory, list[AnnotatedEntity]]],
    ontology: Ontology,
    sources: dict[str, FeedSource],
) -> ResolutionContext:
    """Evidence for disambiguation: in-text country mentions, then source hints.

    The source hint applies only when the contributing stories' sources agree
    on a single country.
    """
    texts = []
    mentioned: set[str] = set()
    hints: set[str] = set()
    for sid in story_ids:
        story, entities = tagged[sid]
        texts.append(story.text)
        for entity in entities:
            if entity.entity_class is EntityClass.LOCATION:
                for cand in ontology.lookup_location_candidates(entity.surface):
                    if cand.kind is LocationKind.COUNTRY:
                        mentioned.add(cand.id)
        source = sources.get(story.source_id)
        if source and source.country_hint:
            hints.add(source.country_hint)
    return ResolutionContext(
        story_texts="\n".join(texts),
        mentioned_country_ids=frozenset(mentioned),
        source_country_hint=next(iter(hints)) if len(hints) == 1 else None,
    )


def run_cycle(
    store: StoryStore,
    ontology: Ontology,
    classifier: TopicClassifier,
    tagger: TaggingFunction,
    now: datetime,
    top_k: int = DEFAULT_TOP_K,
    threshold_mode: str = "rank",
    sources: Optional[dict[str, FeedSource]] = None,
    diagnostics: Optional[CycleDiagnostics] = None,
) -> list[OutbreakEvent]:
    """One detection cycle over the last 24 hours of stories."""
    sources = sources or {}
    diagnostics = diagnostics if diagnostics is not None else CycleDiagnostics()

    window = store.select_window(now - WINDOW, now, now=now)
    diagnostics.window_size = len(window)

    relevant = [s for s in window if classifier.is_relevant(s)]
    diagnostics.relevant_count = len(relevant)

    tagged = {story.id: (story, tagger(story)) for story in relevant}

    per_story = [
        (story.id, detect_story_pairs(story, entities)) for story, entities in tagged.values()
    ]
    table = aggregate_frequencies(per_story)
    top = rank_top_pairs(table, top_k=top_k, mode=threshold_mode)

    grounded = []
    for key, freq in top:
        context = _build_context(table.story_ids[key], tagged, ontology, sources)
        pair = ground_pair(key, freq, ontology, context)
        if pair is None:
            diagnostics.dropped_pairs.append(f"{key[0]}\t{key[1]}\tno-location-candidate")
            continue
        if pair.resolution_tier is ResolutionTier.FALLBACK:
            resolved = ResolvedLocation(ontology.locations[pair.location_id], pair.resolution_tier)
            candidates = ontology.lookup_location_candidates(key[0])
            diagnostics.fallback_resolutions.append(fallback_diagnostic(key[0], resolved, candidates))
        grounded.append(pair)

    return remap_events(grounded, list(tagged.values()), ontology, detected_at=now)


def replay_hourly(
    store: StoryStore,
    ontology: Ontology,
    classifier: TopicClassifier,
    tagger: TaggingFunction,
    start: datetime,
    end: datetime,
    top_k: int = DEFAULT_TOP_K,
    sources: Optional[dict[str, FeedSource]] = None,
) -> list[OutbreakEvent]:
    """Run hourly cycles from start to end (inclusive), concatenating all events."""
    events: list[OutbreakEvent] = []
    cursor = start
    while cursor <= end:
        events.extend(run_cycle(store, ontology, classifier, tagger, cursor, top_k=top_k, sources=sources))
        cursor += timedelta(hours=1)
    return events


def dump_events(events: Sequence[OutbreakEvent], ontology: Ontology) -> str:
    """Event dump, one line per event:
    ``detected_at<TAB>disease<TAB>grounded_flag<TAB>location_id<TAB>lat<TAB>lon<TAB>corpus_freq<TAB>story_ids``.
    """
    lines = []
    for e in events:
        loc = ontology.locations[e.location_id]
        lines.append(
            "\t".join(
                [
                    e.detected_at.isoformat(),
                    e.disease,
                    "1" if e.disease_grounded else "0",
                    e.location_id,
                    str(loc.latitude),
                    str(loc.longitude),
                    str(e.corpus_freq),
                    ",".join(e.story_ids),
                ]
            )
        )
    return "\n".join(lines)
