"""Multinomial naive Bayes relevance classifier over raw tokens and NE features.

The estimator follows the fit/predict convention: ``TopicClassifier().fit(docs)``
returns self, ``predict`` maps feature vectors to labels. Models are immutable
after fitting and safe for concurrent prediction.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .feeds import NewsStory
from .ontology import normalize_term
from .tagger import AnnotatedEntity, TaggingFunction

RELEVANT = "relevant"
IRRELEVANT = "irrelevant"
CLASSES = (RELEVANT, IRRELEVANT)

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

MODEL_FORMAT_VERSION = 1


class NotFittedError(RuntimeError):
    pass


class TrainingError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledDoc:
    story: NewsStory
    label: str

    def __post_init__(self):
        if self.label not in CLASSES:
            raise ValueError(f"unknown label {self.label!r}")


def extract_features(story: NewsStory, entities: Sequence[AnnotatedEntity] = ()) -> Counter:
    """Feature multiset: lowercased tokens plus one class-prefixed feature per entity mention."""
    text = story.text
    features = Counter(m.group(0).casefold() for m in _TOKEN_RE.finditer(text))
    for entity in entities:
        if not (0 <= entity.start < entity.end <= len(text)):
            raise ValueError(f"entity span [{entity.start},{entity.end}) outside story text")
        features[f"{entity.entity_class.value}={normalize_term(entity.surface)}"] += 1
    return features


class TopicClassifier:
    """Two-class multinomial naive Bayes with add-one smoothing.

    Parameters
    ----------
    entity_tagger : optional tagging function used to derive NE features
        during fit/predict when raw stories are supplied. Without one, only
        raw-token features are used.
    """

    def __init__(self, entity_tagger: Optional[TaggingFunction] = None):
        self.entity_tagger = entity_tagger
        self.log_priors_: Optional[dict[str, float]] = None
        self.log_likelihoods_: Optional[dict[str, dict[str, float]]] = None
        self.vocabulary_: Optional[list[str]] = None

    def get_params(self, deep: bool = True) -> dict:
        return {"entity_tagger": self.entity_tagger}

    def set_params(self, **params) -> "TopicClassifier":
        for key, value in params.items():
            if not hasattr(self, key):
                raise ValueError(f"unknown parameter {key!r}")
            setattr(self, key, value)
        return self

    # -- training ----------------------------------------------------------
    def _features_for(self, story: NewsStory) -> Counter:
        entities = self.entity_tagger(story) if self.entity_tagger else ()
        return extract_features(story, entities)

    def fit(self, corpus: Sequence[LabeledDoc]) -> "TopicClassifier":
        labels = {doc.label for doc in corpus}
        if labels != set(CLASSES):
            raise TrainingError(f"corpus must contain both classes, got {sorted(labels)}")

        doc_counts = Counter(doc.label for doc in corpus)
        class_features: dict[str, Counter] = {c: Counter() for c in CLASSES}
        for doc in corpus:
            class_features[doc.label].update(self._features_for(doc.story))

        vocabulary = sorted(set().union(*(class_features[c] for c in CLASSES)))
        vocab_size = len(vocabulary)
        total_docs = len(corpus)

        self.log_priors_ = {c: math.log(doc_counts[c] / total_docs) for c in CLASSES}
        self.log_likelihoods_ = {}
        for c in CLASSES:
            total = sum(class_features[c].values()) + vocab_size
            self.log_likelihoods_[c] = {
                feature: math.log((class_features[c][feature] + 1) / total) for feature in vocabulary
            }
        self.vocabulary_ = vocabulary
        return self

    # -- prediction --------------------------------------------------------
    def _check_fitted(self):
        if self.log_priors_ is None:
            raise NotFittedError("classifier has not been fitted")

    def log_posteriors(self, features: Counter) -> dict[str, float]:
        """Unnormalized per-class log posterior; unknown features are ignored."""
        self._check_fitted()
        scores = {}
        for c in CLASSES:
            table = self.log_likelihoods_[c]
            score = self.log_priors_[c]
            for feature, count in features.items():
                logp = table.get(feature)
                if logp is not None:
                    score += count * logp
            scores[c] = score
        return scores

    def predict(self, features: Counter) -> tuple[str, dict[str, float]]:
        """Argmax label and the per-class log posteriors. Ties go to irrelevant."""
        scores = self.log_posteriors(features)
        label = RELEVANT if scores[RELEVANT] > scores[IRRELEVANT] else IRRELEVANT
        return label, scores

    def predict_story(self, story: NewsStory) -> tuple[str, dict[str, float]]:
        return self.predict(self._features_for(story))

    def is_relevant(self, story: NewsStory) -> bool:
        return self.predict_story(story)[0] == RELEVANT

    # -- serialization -----------------------------------------------------
    def to_json(self) -> str:
        self._check_fitted()
        return json.dumps(
            {
                "format_version": MODEL_FORMAT_VERSION,
                "classes": list(CLASSES),
                "vocabulary": self.vocabulary_,
                "log_priors": self.log_priors_,
                "log_likelihoods": self.log_likelihoods_,
            },
            ensure_ascii=False,
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, payload: str, entity_tagger: Optional[TaggingFunction] = None) -> "TopicClassifier":
        raw = json.loads(payload)
        if raw.get("format_version") != MODEL_FORMAT_VERSION:
            raise ValueError(f"unsupported model format version {raw.get('format_version')!r}")
        model = cls(entity_tagger=entity_tagger)
        model.log_priors_ = raw["log_priors"]
        model.log_likelihoods_ = raw["log_likelihoods"]
        model.vocabulary_ = raw["vocabulary"]
        return model


def parse_labeled_corpus(lines: Iterable[str], genre=None) -> list[LabeledDoc]:
    """Parse the labeled corpus format: ``label<TAB>headline<TAB>body`` per line.

    Literal tabs inside text are escaped as ``\\t``.
    """
    from datetime import datetime, timezone

    from .feeds import Genre, story_id

    genre = genre or Genre.PRESS
    epoch = datetime(2007, 1, 1, tzinfo=timezone.utc)
    docs = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise ValueError(f"corpus line {lineno}: need label, headline, body")
        label, headline, body = (f.replace("\\t", "\t") for f in fields)
        story = NewsStory(
            id=story_id(f"corpus:{lineno}", headline),
            source_id="corpus",
            url=f"corpus:{lineno}",
            headline=headline,
            body=body,
            published_at=epoch,
            fetched_at=epoch,
            genre=genre,
        )
        docs.append(LabeledDoc(story=story, label=label))
    return docs


def train(corpus: Sequence[LabeledDoc], entity_tagger: Optional[TaggingFunction] = None) -> TopicClassifier:
    return TopicClassifier(entity_tagger=entity_tagger).fit(corpus)


def cross_validation_accuracy(
    corpus: Sequence[LabeledDoc],
    folds: int = 5,
    entity_tagger: Optional[TaggingFunction] = None,
):
    """Deterministic k-fold accuracy: document i goes to fold ``i % folds``.

    Returns an exact Fraction of correct predictions over all held-out docs.
    """
    from fractions import Fraction

    if folds < 2 or len(corpus) < folds:
        raise ValueError(f"need at least {folds} documents for {folds}-fold validation")
    correct = 0
    for fold in range(folds):
        held_out = [doc for i, doc in enumerate(corpus) if i % folds == fold]
        training = [doc for i, doc in enumerate(corpus) if i % folds != fold]
        model = TopicClassifier(entity_tagger=entity_tagger).fit(training)
        correct += sum(1 for doc in held_out if model.predict_story(doc.story)[0] == doc.label)
    return Fraction(correct, len(corpus))
