from datetime import datetime, timezone
from pathlib import Path

import pytest

from healthmonitor.feeds import Genre, NewsStory, story_id
from healthmonitor.ontology import load_bundled_ontology
from healthmonitor.tagger import GazetteerTagger, build_gazetteer

FIXTURES = Path(__file__).parent / "fixtures"

T0 = datetime(2007, 11, 11, 12, 0, tzinfo=timezone.utc)


def make_story(
    headline: str,
    body: str = "",
    published_at: datetime = T0,
    source_id: str = "src-1",
    genre: Genre = Genre.PRESS,
    url: str = "",
) -> NewsStory:
    url = url or f"http://example.test/{story_id(headline, headline)}"
    return NewsStory(
        id=story_id(url, headline),
        source_id=source_id,
        url=url,
        headline=headline,
        body=body,
        published_at=published_at,
        fetched_at=published_at,
        genre=genre,
    )


@pytest.fixture(scope="session")
def ontology():
    return load_bundled_ontology()


@pytest.fixture(scope="session")
def gazetteer(ontology):
    return build_gazetteer(ontology)


@pytest.fixture(scope="session")
def tagger(gazetteer):
    return GazetteerTagger(gazetteer)
