"""HTTP API: filterable outbreak events, ontology lookups, and story access.

Read-mostly service. The detection cycle publishes a complete event set that
replaces the previous one atomically; readers see either the old or the new
set, never a mixture.
"""

from __future__ import annotations

import json
import threading
import urllib.parse
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from enum import Enum
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse

from .detector import OutbreakEvent
from .feeds import Genre, NewsStory, dedup_initial_headline
from .ontology import Ontology, Syndrome
from .store import StoryStore


class DatePreset(Enum):
    TODAY = "Today"
    THIS_WEEK = "ThisWeek"
    ONE_WEEK = "OneWeek"
    TWO_WEEKS = "TwoWeeks"
    THREE_WEEKS = "ThreeWeeks"
    LAST_30_DAYS = "Last30Days"


def resolve_date_preset(preset: DatePreset, now: datetime) -> tuple[datetime, datetime]:
    """Translate a UI date preset into a concrete [from, to] window ending at now."""
    now = now.astimezone(timezone.utc)
    if preset is DatePreset.TODAY:
        return now.replace(hour=0, minute=0, second=0, microsecond=0), now
    if preset is DatePreset.THIS_WEEK:
        monday = (now - timedelta(days=now.weekday())).replace(hour=0, minute=0, second=0, microsecond=0)
        return monday, now
    days = {DatePreset.ONE_WEEK: 7, DatePreset.TWO_WEEKS: 14, DatePreset.THREE_WEEKS: 21,
            DatePreset.LAST_30_DAYS: 30}[preset]
    return now - timedelta(days=days), now


@dataclass(frozen=True)
class EventQuery:
    preset: Optional[DatePreset] = None
    explicit_range: Optional[tuple[datetime, datetime]] = None
    genres: frozenset[Genre] = field(default_factory=frozenset)
    syndromes: frozenset[Syndrome] = field(default_factory=frozenset)
    disease_ids: Optional[frozenset[str]] = None
    include_ungrounded_diseases: bool = False
    initial_headline_only: bool = False

    def __post_init__(self):
        if self.preset is not None and self.explicit_range is not None:
            raise ValueError("preset and explicit range are mutually exclusive")

    def window(self, now: datetime) -> tuple[datetime, datetime]:
        if self.explicit_range is not None:
            return self.explicit_range
        return resolve_date_preset(self.preset or DatePreset.LAST_30_DAYS, now)


REFERENCE_PROVIDERS = (
    ("PubMed", "https://pubmed.ncbi.nlm.nih.gov/?term="),
    ("HighWire", "https://www.highwirepress.com/search?query="),
    ("Google Scholar", "https://scholar.google.com/scholar?q="),
)


def build_reference_links(disease_display: str, country_name: str) -> list[tuple[str, str]]:
    """Biomedical reference links querying: disease, country, and the quoted word case."""
    if not disease_display:
        raise ValueError("disease display name must be non-empty")
    terms = [disease_display]
    if country_name:
        terms.append(country_name)
    terms.append('"case"')
    query = urllib.parse.quote(" ".join(terms), safe="")
    return [(provider, base + query) for provider, base in REFERENCE_PROVIDERS]


class EventStore:
    """Accumulated detection-cycle output with atomic snapshot replacement."""

    def __init__(self, log_path: Optional[Path] = None):
        self._events: tuple[OutbreakEvent, ...] = ()
        self._cycle_at: Optional[datetime] = None
        self._lock = threading.Lock()
        self._log_path = Path(log_path) if log_path else None
        if self._log_path and self._log_path.exists():
            with open(self._log_path, encoding="utf-8") as fh:
                self._events = tuple(event_from_record(line) for line in fh if line.strip())
            if self._events:
                self._cycle_at = max(e.detected_at for e in self._events)

    def publish_cycle(self, events: list[OutbreakEvent], detected_at: datetime) -> None:
        with self._lock:
            self._events = self._events + tuple(events)
            self._cycle_at = detected_at
            if self._log_path and events:
                with open(self._log_path, "a", encoding="utf-8") as fh:
                    for event in events:
                        fh.write(event_to_record(event) + "\n")

    def snapshot(self) -> tuple[tuple[OutbreakEvent, ...], Optional[datetime]]:
        with self._lock:
            return self._events, self._cycle_at


def event_to_record(event: OutbreakEvent) -> str:
    return json.dumps(
        {
            "disease": event.disease,
            "disease_grounded": event.disease_grounded,
            "location_id": event.location_id,
            "location_surface": event.location_surface,
            "corpus_freq": event.corpus_freq,
            "story_ids": list(event.story_ids),
            "first_seen": event.first_seen.isoformat(),
            "detected_at": event.detected_at.isoformat(),
        },
        ensure_ascii=False,
        sort_keys=True,
    )


def event_from_record(line: str) -> OutbreakEvent:
    raw = json.loads(line)
    return OutbreakEvent(
        disease=raw["disease"],
        disease_grounded=raw["disease_grounded"],
        location_id=raw["location_id"],
        location_surface=raw["location_surface"],
        corpus_freq=raw["corpus_freq"],
        story_ids=tuple(raw["story_ids"]),
        first_seen=datetime.fromisoformat(raw["first_seen"]),
        detected_at=datetime.fromisoformat(raw["detected_at"]),
    )


@dataclass(frozen=True)
class EventView:
    event: OutbreakEvent
    disease_display: str
    syndromes: tuple[str, ...]
    location_name: str
    country_name: str
    latitude: float
    longitude: float
    stories: tuple[NewsStory, ...]
    reference_links: tuple[tuple[str, str], ...]

    @property
    def bco_linked(self) -> bool:
        return self.event.disease_grounded

    def to_json_dict(self) -> dict:
        return {
            "disease": self.event.disease,
            "disease_display": self.disease_display,
            "bco_linked": self.bco_linked,
            "syndromes": list(self.syndromes),
            "location_id": self.event.location_id,
            "location_name": self.location_name,
            "country_name": self.country_name,
            "latitude": self.latitude,
            "longitude": self.longitude,
            "corpus_freq": self.event.corpus_freq,
            "first_seen": self.event.first_seen.isoformat(),
            "detected_at": self.event.detected_at.isoformat(),
            "stories": [
                {
                    "id": s.id,
                    "headline": s.headline,
                    "url": s.url,
                    "genre": s.genre.value,
                    "published_at": s.published_at.isoformat(),
                }
                for s in self.stories
            ],
            "reference_links": [
                {"provider": provider, "url": url} for provider, url in self.reference_links
            ],
        }


def _event_view(event: OutbreakEvent, stories: list[NewsStory], ontology: Ontology) -> EventView:
    location = ontology.locations[event.location_id]
    country = ontology.locations[location.parent_country_id]
    if event.disease_grounded:
        concept = ontology.diseases[event.disease]
        display = concept.root_name
        syndromes = tuple(sorted(s.value for s in concept.syndromes))
    else:
        display = event.disease
        syndromes = ()
    return EventView(
        event=event,
        disease_display=display,
        syndromes=syndromes,
        location_name=location.name,
        country_name=country.name,
        latitude=location.latitude,
        longitude=location.longitude,
        stories=tuple(stories),
        reference_links=tuple(build_reference_links(display, country.name)),
    )


def query_events(
    event_store: EventStore,
    story_store: StoryStore,
    query: EventQuery,
    ontology: Ontology,
    now: Optional[datetime] = None,
) -> list[EventView]:
    """Filter the event snapshot by range, genre, syndrome, and disease selection."""
    events, _cycle_at = event_store.snapshot()
    now = now or datetime.now(timezone.utc)
    window_from, window_to = query.window(now)

    views = []
    for event in events:
        if not window_from <= event.first_seen <= window_to:
            continue

        if query.syndromes:
            if event.disease_grounded:
                concept = ontology.diseases[event.disease]
                if not (concept.syndromes & query.syndromes):
                    continue
            elif not query.include_ungrounded_diseases:
                continue

        if query.disease_ids is not None:
            if not event.disease_grounded or event.disease not in query.disease_ids:
                continue

        stories = [s for s in (story_store.get(sid) for sid in event.story_ids) if s is not None]
        if query.genres:
            stories = [s for s in stories if s.genre in query.genres]
            if not stories:
                continue
        if query.initial_headline_only:
            stories = dedup_initial_headline(stories)

        views.append(_event_view(event, stories, ontology))

    views.sort(key=lambda v: (v.event.disease, v.event.location_id))
    views.sort(key=lambda v: v.event.first_seen, reverse=True)
    return views


class QueryParseError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field_name = field_name
        self.detail = message


def parse_event_query(params: dict[str, str]) -> EventQuery:
    """Build an EventQuery from raw request parameters, with field-level errors."""
    preset = None
    explicit = None
    if params.get("range"):
        try:
            preset = DatePreset(params["range"])
        except ValueError:
            raise QueryParseError("range", f"unknown preset {params['range']!r}") from None
    if params.get("from") or params.get("to"):
        if preset is not None:
            raise QueryParseError("range", "preset and from/to are mutually exclusive")
        if not (params.get("from") and params.get("to")):
            raise QueryParseError("from", "explicit range needs both from and to")
        try:
            explicit = (
                datetime.fromisoformat(params["from"].replace("Z", "+00:00")),
                datetime.fromisoformat(params["to"].replace("Z", "+00:00")),
            )
        except ValueError as exc:
            raise QueryParseError("from", f"bad timestamp: {exc}") from None
        if explicit[0] > explicit[1]:
            raise QueryParseError("from", "inverted range")

    def parse_set(name: str, parser):
        raw = params.get(name, "")
        values = set()
        for token in raw.split(","):
            token = token.strip()
            if not token:
                continue
            try:
                values.add(parser(token))
            except ValueError:
                raise QueryParseError(name, f"unknown value {token!r}") from None
        return frozenset(values)

    diseases_raw = params.get("diseases")
    return EventQuery(
        preset=preset,
        explicit_range=explicit,
        genres=parse_set("genres", Genre),
        syndromes=parse_set("syndromes", Syndrome),
        disease_ids=(
            frozenset(t.strip() for t in diseases_raw.split(",") if t.strip())
            if diseases_raw is not None
            else None
        ),
        include_ungrounded_diseases=params.get("include_ungrounded", "") in ("1", "true"),
        initial_headline_only=params.get("initial_headline_only", "") in ("1", "true"),
    )


def create_app(
    ontology: Ontology,
    story_store: StoryStore,
    event_store: EventStore,
    ui_dir: Optional[Path] = None,
    clock=None,
):
    """FastAPI application exposing the /api/v1 endpoints plus the UI bundle."""
    app = FastAPI(title="Global Health Monitor API", version="1")
    clock = clock or (lambda: datetime.now(timezone.utc))

    def cycle_stamp() -> Optional[str]:
        _, cycle_at = event_store.snapshot()
        return cycle_at.isoformat() if cycle_at else None

    @app.get("/api/v1/health")
    def health():
        return {"status": "ok", "stories": len(story_store), "cycle_detected_at": cycle_stamp()}

    @app.get("/api/v1/events")
    def events(request: Request):
        params = dict(request.query_params)
        try:
            query = parse_event_query(params)
        except QueryParseError as exc:
            return JSONResponse(status_code=400, content={"field": exc.field_name, "error": exc.detail})
        views = query_events(event_store, story_store, query, ontology, now=clock())
        return {
            "cycle_detected_at": cycle_stamp(),
            "events": [v.to_json_dict() for v in views],
        }

    @app.get("/api/v1/diseases")
    def diseases():
        return {
            "cycle_detected_at": cycle_stamp(),
            "diseases": [
                {
                    "id": d.id,
                    "root_name": d.root_name,
                    "synonyms": sorted(d.synonyms),
                    "syndromes": sorted(s.value for s in d.syndromes),
                    "external_refs": [{"scheme": s, "id": i} for s, i in d.external_refs],
                }
                for d in sorted(ontology.diseases.values(), key=lambda d: d.id)
            ],
        }

    @app.get("/api/v1/locations")
    def locations(name: str = ""):
        candidates = ontology.lookup_location_candidates(name) if name else []
        return {
            "cycle_detected_at": cycle_stamp(),
            "locations": [
                {
                    "id": loc.id,
                    "name": loc.name,
                    "kind": loc.kind.value,
                    "parent_country_id": loc.parent_country_id,
                    "latitude": loc.latitude,
                    "longitude": loc.longitude,
                }
                for loc in candidates
            ],
        }

    @app.get("/api/v1/stories/{story_id}")
    def story(story_id: str):
        found = story_store.get(story_id)
        if found is None:
            raise HTTPException(status_code=404, detail=f"unknown story id {story_id!r}")
        return {
            "cycle_detected_at": cycle_stamp(),
            "story": {
                "id": found.id,
                "source_id": found.source_id,
                "url": found.url,
                "headline": found.headline,
                "body": found.body,
                "genre": found.genre.value,
                "published_at": found.published_at.isoformat(),
                "fetched_at": found.fetched_at.isoformat(),
            },
        }

    if ui_dir is not None and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
