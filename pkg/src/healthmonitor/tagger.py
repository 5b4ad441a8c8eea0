"""Gazetteer-based named entity tagging with longest-match semantics.

Stands in for a statistical tagger behind the same interface: any callable
``(NewsStory) -> list[AnnotatedEntity]`` can replace ``GazetteerTagger``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable

from .feeds import NewsStory
from .ontology import Ontology, normalize_term


class EntityClass(Enum):
    PERSON = "PERSON"
    ORGANIZATION = "ORGANIZATION"
    DISEASE = "DISEASE"
    LOCATION = "LOCATION"


# Equal-length matches resolve in this order (detector consumes the first two).
_CLASS_PRECEDENCE = (
    EntityClass.DISEASE,
    EntityClass.LOCATION,
    EntityClass.ORGANIZATION,
    EntityClass.PERSON,
)


@dataclass(frozen=True)
class AnnotatedEntity:
    start: int  # character offset, inclusive
    end: int  # character offset, exclusive
    surface: str
    entity_class: EntityClass


TaggingFunction = Callable[[NewsStory], list[AnnotatedEntity]]

_TOKEN_RE = re.compile(r"\w+(?:[-'’.]\w+)*")


def _token_spans(text: str) -> list[tuple[int, int]]:
    return [m.span() for m in _TOKEN_RE.finditer(text)]


class Gazetteer:
    """Per-class maps from normalized surface to a canonical hint."""

    def __init__(self, entries: dict[EntityClass, dict[str, str]]):
        self._entries = {cls: dict(entries.get(cls, {})) for cls in EntityClass}
        self._max_tokens = {
            cls: max((key.count(" ") + 1 for key in table), default=0)
            for cls, table in self._entries.items()
        }
        self._longest = max(self._max_tokens.values(), default=0)

    def entry_count(self, entity_class: EntityClass) -> int:
        """Number of (surface, referent) links; an ambiguous name counts once per referent."""
        return sum(
            len(hint) if isinstance(hint, tuple) else 1 for hint in self._entries[entity_class].values()
        )

    def lookup(self, entity_class: EntityClass, normalized: str) -> str | None:
        return self._entries[entity_class].get(normalized)

    def match_class(self, normalized: str, token_count: int) -> EntityClass | None:
        for cls in _CLASS_PRECEDENCE:
            if token_count <= self._max_tokens[cls] and normalized in self._entries[cls]:
                return cls
        return None

    @property
    def max_entry_tokens(self) -> int:
        return self._longest


def build_gazetteer(
    ontology: Ontology,
    person_list: Iterable[str] = (),
    org_list: Iterable[str] = (),
) -> Gazetteer:
    """Derive the tagging dictionary from the ontology plus auxiliary name lists.

    DISEASE entries are exactly the ontology's synonym index and LOCATION
    entries exactly its location name index.
    """
    disease = dict(ontology.disease_synonym_index)
    location = dict(ontology.location_name_index)
    person = {normalize_term(p): p for p in person_list if normalize_term(p)}
    org = {normalize_term(o): o for o in org_list if normalize_term(o)}
    return Gazetteer(
        {
            EntityClass.DISEASE: disease,
            EntityClass.LOCATION: location,
            EntityClass.PERSON: person,
            EntityClass.ORGANIZATION: org,
        }
    )


def tag_text(text: str, gazetteer: Gazetteer) -> list[AnnotatedEntity]:
    """Longest-match scan over token-boundary-aligned spans, sorted by start."""
    spans = _token_spans(text)
    entities: list[AnnotatedEntity] = []
    i = 0
    n = len(spans)
    max_tokens = gazetteer.max_entry_tokens
    while i < n:
        matched = None
        for width in range(min(max_tokens, n - i), 0, -1):
            start = spans[i][0]
            end = spans[i + width - 1][1]
            normalized = normalize_term(text[start:end])
            cls = gazetteer.match_class(normalized, width)
            if cls is not None:
                matched = AnnotatedEntity(start=start, end=end, surface=text[start:end], entity_class=cls)
                i += width
                break
        if matched is not None:
            entities.append(matched)
        else:
            i += 1
    return entities


def tag_entities(story: NewsStory, gazetteer: Gazetteer) -> list[AnnotatedEntity]:
    """Tag the story's combined headline+body text."""
    return tag_text(story.text, gazetteer)


class GazetteerTagger:
    """Tagging-function adapter around a fixed gazetteer."""

    def __init__(self, gazetteer: Gazetteer):
        self.gazetteer = gazetteer

    def __call__(self, story: NewsStory) -> list[AnnotatedEntity]:
        return tag_entities(story, self.gazetteer)


def dump_annotations(story_id: str, entities: Iterable[AnnotatedEntity]) -> str:
    """Evaluation dump: ``story_id<TAB>start<TAB>end<TAB>class<TAB>surface`` per line."""
    return "\n".join(
        f"{story_id}\t{e.start}\t{e.end}\t{e.entity_class.value}\t{e.surface}" for e in entities
    )
