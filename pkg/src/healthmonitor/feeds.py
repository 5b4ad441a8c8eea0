"""Feed sources, story model, RSS/Atom parsing, and headline deduplication."""

from __future__ import annotations

import hashlib
import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from datetime import datetime, timezone
from email.utils import parsedate_to_datetime
from enum import Enum
from typing import Callable, Iterable, Optional

from .ontology import normalize_term

logger = logging.getLogger(__name__)

# Transport: url -> raw bytes. Tests inject fixtures; production uses HTTP.
Transport = Callable[[str], bytes]


class FeedError(Exception):
    """Source-level fetch or parse failure."""

    def __init__(self, source_id: str, message: str, retry_after_seconds: int = 300):
        super().__init__(f"{source_id}: {message}")
        self.source_id = source_id
        self.retry_after_seconds = retry_after_seconds


class Genre(Enum):
    PRESS = "Press"
    OFFICIAL = "Official"
    BUSINESS = "Business"
    MIXED = "Mixed"


@dataclass(frozen=True)
class FeedSource:
    id: str
    url: str
    genre: Genre
    country_hint: Optional[str] = None  # ontology country id
    poll_enabled: bool = True


@dataclass(frozen=True)
class NewsStory:
    id: str
    source_id: str
    url: str
    headline: str
    body: str
    published_at: datetime
    fetched_at: datetime
    genre: Genre

    @property
    def text(self) -> str:
        """Headline and body as one annotatable text."""
        return f"{self.headline}\n\n{self.body}" if self.body else self.headline


def story_id(url: str, headline: str) -> str:
    """Deterministic content digest over (url, headline)."""
    return hashlib.sha256(f"{url}\n{headline}".encode("utf-8")).hexdigest()[:16]


def parse_sources(lines: Iterable[str]) -> list[FeedSource]:
    """Parse the source list file: ``id<TAB>url<TAB>genre<TAB>country_hint``."""
    sources = []
    seen = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) < 3:
            raise ValueError(f"sources line {lineno}: need at least id, url, genre")
        src_id, url, genre_field = fields[0], fields[1], fields[2]
        hint = fields[3] if len(fields) > 3 and fields[3] else None
        if src_id in seen:
            raise ValueError(f"sources line {lineno}: duplicate source id {src_id!r}")
        seen.add(src_id)
        sources.append(FeedSource(id=src_id, url=url, genre=Genre(genre_field), country_hint=hint))
    return sources


def _strip_ns(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _element_text(parent: ET.Element, name: str) -> Optional[str]:
    for child in parent:
        if _strip_ns(child.tag) == name and child.text:
            return child.text.strip()
    return None


def _parse_timestamp(value: Optional[str]) -> Optional[datetime]:
    if not value:
        return None
    try:
        ts = parsedate_to_datetime(value)  # RFC 822 (RSS pubDate)
    except (TypeError, ValueError):
        try:
            ts = datetime.fromisoformat(value.replace("Z", "+00:00"))  # Atom
        except ValueError:
            return None
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def _rss_items(root: ET.Element) -> list[ET.Element]:
    return [el for el in root.iter() if _strip_ns(el.tag) == "item"]


def _atom_entries(root: ET.Element) -> list[ET.Element]:
    return [el for el in root.iter() if _strip_ns(el.tag) == "entry"]


def _atom_link(entry: ET.Element) -> Optional[str]:
    best = None
    for child in entry:
        if _strip_ns(child.tag) == "link":
            href = child.get("href")
            if href and (best is None or child.get("rel") in (None, "alternate")):
                best = href
    return best


def fetch_and_parse(source: FeedSource, transport: Transport, now: datetime) -> list[NewsStory]:
    """Fetch one source and return a story per well-formed item.

    Malformed items are skipped with a diagnostic; only transport failures
    and undecodable documents fail the whole source.
    """
    try:
        payload = transport(source.url)
    except Exception as exc:
        raise FeedError(source.id, f"transport failure: {exc}") from exc
    try:
        root = ET.fromstring(payload)
    except ET.ParseError as exc:
        raise FeedError(source.id, f"undecodable feed document: {exc}") from exc

    root_tag = _strip_ns(root.tag)
    if root_tag == "feed":
        items = _atom_entries(root)
        get_link = _atom_link
        date_fields = ("published", "updated")
        body_fields = ("summary", "content")
    else:
        items = _rss_items(root)
        get_link = lambda item: _element_text(item, "link")  # noqa: E731
        date_fields = ("pubDate",)
        body_fields = ("description",)

    stories = []
    for index, item in enumerate(items):
        headline = _element_text(item, "title")
        if not headline:
            logger.warning("source %s item %d skipped: missing headline", source.id, index)
            continue
        url = get_link(item) or ""
        published = None
        for field in date_fields:
            published = _parse_timestamp(_element_text(item, field))
            if published:
                break
        body = ""
        for field in body_fields:
            body = _element_text(item, field) or ""
            if body:
                break
        stories.append(
            NewsStory(
                id=story_id(url, headline),
                source_id=source.id,
                url=url,
                headline=headline,
                body=body,
                published_at=published or now,
                fetched_at=now,
                genre=source.genre,
            )
        )
    return stories


def dedup_initial_headline(stories: list[NewsStory]) -> list[NewsStory]:
    """Keep one story per normalized headline: the earliest published, ties by id.

    Survivors keep their relative input order.
    """
    winners: dict[str, NewsStory] = {}
    for story in stories:
        key = normalize_term(story.headline)
        incumbent = winners.get(key)
        if incumbent is None or (story.published_at, story.id) < (incumbent.published_at, incumbent.id):
            winners[key] = story
    winner_ids = {s.id for s in winners.values()}
    out, emitted = [], set()
    for story in stories:
        if story.id in winner_ids and story.id not in emitted:
            out.append(story)
            emitted.add(story.id)
    return out
