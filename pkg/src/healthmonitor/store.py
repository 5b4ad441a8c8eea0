"""Append-only story store with time-window queries and a 30-day retention horizon.

Stories persist as a line-delimited JSON log; every record is self-contained
and replayable. One writer at a time mutates the store; readers get snapshot
lists and never observe a partially appended batch.
"""

from __future__ import annotations

import json
import threading
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Iterable, Optional

from .feeds import Genre, NewsStory

RETENTION = timedelta(days=30)


def _dt_to_wire(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).isoformat()


def _dt_from_wire(value: str) -> datetime:
    return datetime.fromisoformat(value).astimezone(timezone.utc)


def story_to_record(story: NewsStory) -> str:
    return json.dumps(
        {
            "id": story.id,
            "source_id": story.source_id,
            "url": story.url,
            "headline": story.headline,
            "body": story.body,
            "published_at": _dt_to_wire(story.published_at),
            "fetched_at": _dt_to_wire(story.fetched_at),
            "genre": story.genre.value,
        },
        ensure_ascii=False,
        sort_keys=True,
    )


def story_from_record(line: str) -> NewsStory:
    raw = json.loads(line)
    return NewsStory(
        id=raw["id"],
        source_id=raw["source_id"],
        url=raw["url"],
        headline=raw["headline"],
        body=raw["body"],
        published_at=_dt_from_wire(raw["published_at"]),
        fetched_at=_dt_from_wire(raw["fetched_at"]),
        genre=Genre(raw["genre"]),
    )


class StoryStore:
    """In-memory story collection with optional append-only log persistence."""

    def __init__(self, log_path: Optional[Path] = None):
        self._stories: dict[str, NewsStory] = {}
        self._order: list[str] = []
        self._lock = threading.Lock()
        self._log_path = Path(log_path) if log_path else None
        if self._log_path and self._log_path.exists():
            with open(self._log_path, encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        story = story_from_record(line)
                        if story.id not in self._stories:
                            self._stories[story.id] = story
                            self._order.append(story.id)

    def __len__(self) -> int:
        return len(self._stories)

    def append(self, stories: Iterable[NewsStory]) -> int:
        """Insert new stories; duplicates (same id) are ignored. Returns count inserted."""
        with self._lock:
            fresh = [s for s in stories if s.id not in self._stories]
            for story in fresh:
                self._stories[story.id] = story
                self._order.append(story.id)
            if self._log_path and fresh:
                with open(self._log_path, "a", encoding="utf-8") as fh:
                    for story in fresh:
                        fh.write(story_to_record(story) + "\n")
            return len(fresh)

    def get(self, story_id: str) -> Optional[NewsStory]:
        return self._stories.get(story_id)

    def all_stories(self) -> list[NewsStory]:
        with self._lock:
            return [self._stories[sid] for sid in self._order]

    def select_window(
        self, from_ts: datetime, to_ts: datetime, now: Optional[datetime] = None
    ) -> list[NewsStory]:
        """Stories with published_at in [from_ts, to_ts), newest first, then id.

        The retention horizon is applied against ``now`` (defaults to to_ts):
        stories older than 30 days are never returned.
        """
        if from_ts > to_ts:
            raise ValueError(f"inverted window: {from_ts} > {to_ts}")
        horizon = (now or to_ts) - RETENTION
        effective_from = max(from_ts, horizon)
        with self._lock:
            snapshot = list(self._stories.values())
        hits = [s for s in snapshot if effective_from <= s.published_at < to_ts]
        hits.sort(key=lambda s: s.id)
        hits.sort(key=lambda s: s.published_at, reverse=True)
        return hits

    def compact(self, now: datetime) -> int:
        """Drop stories past the retention horizon; rewrites the log. Returns count dropped."""
        horizon = now - RETENTION
        with self._lock:
            stale = [sid for sid in self._order if self._stories[sid].published_at < horizon]
            for sid in stale:
                del self._stories[sid]
            self._order = [sid for sid in self._order if sid in self._stories]
            if self._log_path and stale:
                tmp = self._log_path.with_suffix(".tmp")
                with open(tmp, "w", encoding="utf-8") as fh:
                    for sid in self._order:
                        fh.write(story_to_record(self._stories[sid]) + "\n")
                tmp.replace(self._log_path)
            return len(stale)
