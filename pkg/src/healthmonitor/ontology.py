"""Disease and geographical ontology: loading, validation, and lookups.

The ontology bundles two record files (see ``data/diseases.tsv`` and
``data/geo.tsv``): one disease concept or location per line, tab-separated.
After loading, the ontology is immutable and safe for concurrent reads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional


class OntologyError(ValueError):
    """Raised when an ontology source violates a load-time invariant."""


class Syndrome(Enum):
    DERMATOLOGICAL = "Dermatological"
    GASTROINTESTINAL = "Gastrointestinal"
    HEMORRHAGIC_FEVER = "HemorrhagicFever"
    MUSCULOSKELETAL = "Musculoskeletal"
    NEUROLOGICAL = "Neurological"
    RESPIRATORY = "Respiratory"


class LocationKind(Enum):
    COUNTRY = "Country"
    SUB_COUNTRY = "SubCountry"


_WS_RE = re.compile(r"\s+")
# Punctuation here means anything that is neither alphanumeric nor whitespace.
_EDGE_PUNCT_RE = re.compile(r"^[^\w\s]+|[^\w\s]+$")


def normalize_term(term: str) -> str:
    """Canonical surface form: case-fold, collapse whitespace, strip edge punctuation.

    Internal punctuation is preserved ("foot-and-mouth disease" keeps its
    hyphens). No stemming.
    """
    current = _WS_RE.sub(" ", term.casefold()).strip()
    while True:
        stripped = _EDGE_PUNCT_RE.sub("", current).strip()
        if stripped == current:
            return current
        current = stripped


@dataclass(frozen=True)
class DiseaseConcept:
    id: str
    root_name: str
    synonyms: frozenset[str]  # normalized surface forms, includes root_name
    syndromes: frozenset[Syndrome]
    external_refs: tuple[tuple[str, str], ...]  # opaque (scheme, identifier) pairs


@dataclass(frozen=True)
class GeoLocation:
    id: str
    name: str
    kind: LocationKind
    parent_country_id: str  # self for countries
    latitude: float
    longitude: float


@dataclass(frozen=True)
class Ontology:
    diseases: dict[str, DiseaseConcept]
    disease_synonym_index: dict[str, str]  # normalized surface -> disease id
    locations: dict[str, GeoLocation]
    location_name_index: dict[str, tuple[str, ...]]  # normalized name -> location ids
    country_ids: frozenset[str] = field(default_factory=frozenset)

    def lookup_disease(self, term: str) -> Optional[DiseaseConcept]:
        """Resolve a surface term to the unique disease whose synonyms contain it."""
        disease_id = self.disease_synonym_index.get(normalize_term(term))
        return self.diseases[disease_id] if disease_id is not None else None

    def lookup_location_candidates(self, term: str) -> list[GeoLocation]:
        """All locations sharing the normalized name, ordered by id."""
        ids = self.location_name_index.get(normalize_term(term), ())
        return [self.locations[loc_id] for loc_id in ids]

    def diseases_for_syndrome(self, syndrome: Syndrome) -> set[str]:
        return {d.id for d in self.diseases.values() if syndrome in d.syndromes}

    @property
    def country_count(self) -> int:
        return len(self.country_ids)

    @property
    def sub_country_count(self) -> int:
        return len(self.locations) - len(self.country_ids)


def _split_records(source: Iterable[str], expected_tag: str) -> Iterable[tuple[int, list[str]]]:
    for lineno, raw in enumerate(source, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if fields[0] != expected_tag:
            raise OntologyError(f"line {lineno}: expected record tag {expected_tag!r}, got {fields[0]!r}")
        yield lineno, fields


def _parse_disease(lineno: int, fields: list[str]) -> DiseaseConcept:
    if len(fields) < 3:
        raise OntologyError(f"line {lineno}: disease record needs at least id and root name")
    fields = fields + [""] * (6 - len(fields))
    _, disease_id, root_name, syn_field, synd_field, refs_field = fields[:6]
    if not disease_id:
        raise OntologyError(f"line {lineno}: disease record has empty id")
    if not root_name:
        raise OntologyError(f"line {lineno}: disease {disease_id!r} has empty root name")

    synonyms = {normalize_term(s) for s in syn_field.split("|") if normalize_term(s)}
    synonyms.add(normalize_term(root_name))

    syndromes = set()
    for tag in synd_field.split(","):
        tag = tag.strip()
        if not tag:
            continue
        try:
            syndromes.add(Syndrome(tag))
        except ValueError:
            raise OntologyError(f"line {lineno}: disease {disease_id!r} has unknown syndrome {tag!r}") from None

    refs = []
    for pair in refs_field.split(";"):
        pair = pair.strip()
        if not pair:
            continue
        scheme, _, ident = pair.partition(":")
        if not scheme or not ident:
            raise OntologyError(f"line {lineno}: disease {disease_id!r} has malformed reference {pair!r}")
        refs.append((scheme, ident))

    return DiseaseConcept(
        id=disease_id,
        root_name=root_name,
        synonyms=frozenset(synonyms),
        syndromes=frozenset(syndromes),
        external_refs=tuple(refs),
    )


def _parse_location(lineno: int, fields: list[str]) -> GeoLocation:
    if len(fields) != 7:
        raise OntologyError(f"line {lineno}: geo record needs 7 fields, got {len(fields)}")
    _, loc_id, name, kind_field, parent_id, lat_field, lon_field = fields
    if not loc_id:
        raise OntologyError(f"line {lineno}: geo record has empty id")
    if not name:
        raise OntologyError(f"line {lineno}: location {loc_id!r} has empty name")
    try:
        kind = LocationKind(kind_field)
    except ValueError:
        raise OntologyError(f"line {lineno}: location {loc_id!r} has unknown kind {kind_field!r}") from None
    try:
        lat, lon = float(lat_field), float(lon_field)
    except ValueError:
        raise OntologyError(f"line {lineno}: location {loc_id!r} has non-numeric coordinates") from None
    if not -90.0 <= lat <= 90.0 or not -180.0 <= lon <= 180.0:
        raise OntologyError(f"line {lineno}: location {loc_id!r} has out-of-range coordinates ({lat}, {lon})")
    if kind is LocationKind.COUNTRY:
        parent_id = parent_id or loc_id
        if parent_id != loc_id:
            raise OntologyError(f"line {lineno}: country {loc_id!r} must be its own parent")
    elif not parent_id:
        raise OntologyError(f"line {lineno}: sub-country {loc_id!r} has no parent country")
    return GeoLocation(id=loc_id, name=name, kind=kind, parent_country_id=parent_id, latitude=lat, longitude=lon)


def load_ontology(disease_source: Iterable[str], geo_source: Iterable[str]) -> Ontology:
    """Parse, validate, and index both ontology files.

    Raises OntologyError naming the offending record on: duplicate ids,
    a synonym claimed by two diseases, an unresolvable parent country, or
    out-of-range coordinates.
    """
    diseases: dict[str, DiseaseConcept] = {}
    synonym_index: dict[str, str] = {}
    for lineno, fields in _split_records(disease_source, "D"):
        concept = _parse_disease(lineno, fields)
        if concept.id in diseases:
            raise OntologyError(f"line {lineno}: duplicate disease id {concept.id!r}")
        for syn in concept.synonyms:
            if syn in synonym_index:
                raise OntologyError(
                    f"synonym {syn!r} claimed by both {synonym_index[syn]!r} and {concept.id!r}"
                )
            synonym_index[syn] = concept.id
        diseases[concept.id] = concept

    locations: dict[str, GeoLocation] = {}
    for lineno, fields in _split_records(geo_source, "G"):
        loc = _parse_location(lineno, fields)
        if loc.id in locations:
            raise OntologyError(f"line {lineno}: duplicate location id {loc.id!r}")
        locations[loc.id] = loc

    country_ids = {loc.id for loc in locations.values() if loc.kind is LocationKind.COUNTRY}
    for loc in locations.values():
        if loc.kind is LocationKind.SUB_COUNTRY and loc.parent_country_id not in country_ids:
            raise OntologyError(
                f"sub-country {loc.id!r} has unresolvable parent country {loc.parent_country_id!r}"
            )

    name_index: dict[str, list[str]] = {}
    for loc in locations.values():
        name_index.setdefault(normalize_term(loc.name), []).append(loc.id)
    location_name_index = {name: tuple(sorted(ids)) for name, ids in name_index.items()}

    return Ontology(
        diseases=diseases,
        disease_synonym_index=synonym_index,
        locations=locations,
        location_name_index=location_name_index,
        country_ids=frozenset(country_ids),
    )


_DATA_DIR = Path(__file__).parent / "data"


def load_bundled_ontology() -> Ontology:
    """Load the ontology files shipped inside the package."""
    with open(_DATA_DIR / "diseases.tsv", encoding="utf-8") as dfh, \
         open(_DATA_DIR / "geo.tsv", encoding="utf-8") as gfh:
        return load_ontology(dfh, gfh)


# Module-level conveniences mirroring the Ontology methods.
def lookup_disease(ontology: Ontology, term: str) -> Optional[DiseaseConcept]:
    return ontology.lookup_disease(term)


def lookup_location_candidates(ontology: Ontology, term: str) -> list[GeoLocation]:
    return ontology.lookup_location_candidates(term)


def diseases_for_syndrome(ontology: Ontology, syndrome: Syndrome) -> set[str]:
    return ontology.diseases_for_syndrome(syndrome)
