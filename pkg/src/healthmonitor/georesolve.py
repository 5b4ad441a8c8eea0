"""Toponym disambiguation: pick one location among same-named candidates.

Rule cascade, strongest evidence first:
  1. single candidate            -> Unambiguous
  2. unique in-text country      -> ContextCountry
  3. unique source-country hint  -> SourceHint
  4. smallest id                 -> Fallback (flagged in diagnostics)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from .ontology import GeoLocation


class ResolutionTier(Enum):
    UNAMBIGUOUS = "Unambiguous"
    CONTEXT_COUNTRY = "ContextCountry"
    SOURCE_HINT = "SourceHint"
    FALLBACK = "Fallback"


@dataclass(frozen=True)
class ResolutionContext:
    story_texts: str = ""
    mentioned_country_ids: frozenset[str] = field(default_factory=frozenset)
    source_country_hint: Optional[str] = None


@dataclass(frozen=True)
class ResolvedLocation:
    location: GeoLocation
    tier: ResolutionTier


def fallback_diagnostic(surface: str, resolved: ResolvedLocation, candidates: Sequence[GeoLocation]) -> str:
    """Diagnostics record: ``surface<TAB>chosen_id<TAB>candidate_ids``."""
    return f"{surface}\t{resolved.location.id}\t{','.join(sorted(c.id for c in candidates))}"


def resolve(candidates: Sequence[GeoLocation], context: ResolutionContext) -> Optional[ResolvedLocation]:
    """Apply the disambiguation cascade. Returns None for an empty candidate list."""
    if not candidates:
        return None
    ordered = sorted(candidates, key=lambda c: c.id)
    if len(ordered) == 1:
        return ResolvedLocation(ordered[0], ResolutionTier.UNAMBIGUOUS)

    in_context = [c for c in ordered if c.parent_country_id in context.mentioned_country_ids]
    if len(in_context) == 1:
        return ResolvedLocation(in_context[0], ResolutionTier.CONTEXT_COUNTRY)

    if context.source_country_hint is not None:
        hinted = [c for c in ordered if c.parent_country_id == context.source_country_hint]
        if len(hinted) == 1:
            return ResolvedLocation(hinted[0], ResolutionTier.SOURCE_HINT)

    return ResolvedLocation(ordered[0], ResolutionTier.FALLBACK)
