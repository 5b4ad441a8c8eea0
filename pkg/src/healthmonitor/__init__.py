"""Global health monitoring pipeline: ingest news, detect and map outbreak events."""

from .classifier import TopicClassifier, extract_features, train
from .detector import OutbreakEvent, run_cycle
from .feeds import FeedSource, Genre, NewsStory, dedup_initial_headline, fetch_and_parse
from .georesolve import ResolutionContext, ResolutionTier, resolve
from .ontology import (
    DiseaseConcept,
    GeoLocation,
    Ontology,
    OntologyError,
    Syndrome,
    load_bundled_ontology,
    load_ontology,
    normalize_term,
)
from .store import StoryStore
from .tagger import AnnotatedEntity, EntityClass, Gazetteer, GazetteerTagger, build_gazetteer, tag_entities

__version__ = "0.1.0"

__all__ = [
    "AnnotatedEntity",
    "DiseaseConcept",
    "EntityClass",
    "FeedSource",
    "Gazetteer",
    "GazetteerTagger",
    "GeoLocation",
    "Genre",
    "NewsStory",
    "Ontology",
    "OntologyError",
    "OutbreakEvent",
    "ResolutionContext",
    "ResolutionTier",
    "StoryStore",
    "Syndrome",
    "TopicClassifier",
    "build_gazetteer",
    "dedup_initial_headline",
    "extract_features",
    "fetch_and_parse",
    "load_bundled_ontology",
    "load_ontology",
    "normalize_term",
    "resolve",
    "run_cycle",
    "tag_entities",
    "train",
]
