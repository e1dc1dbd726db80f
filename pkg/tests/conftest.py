import sys
from datetime import datetime, timedelta, timezone
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from buzzcast.corpus import Tweet


UTC = timezone.utc
T0 = datetime(2009, 12, 4, 0, 0, 0, tzinfo=UTC)


def make_tweet(i: int, ts: datetime, text: str = "hello world", author: str | None = None) -> Tweet:
    return Tweet(id=f"tw{i}", author=author or f"user{i % 7}", timestamp=ts, text=text)


@pytest.fixture
def release():
    return T0


@pytest.fixture
def tweets_every_hour(release):
    start = release - timedelta(days=7)
    return [make_tweet(i, start + timedelta(hours=i)) for i in range(21 * 24)]
