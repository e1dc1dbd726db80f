"""Tweet corpus loading, topic matching, windowing, and text flags.

Corpora are JSON Lines files with one object per line:

    {"id": "...", "author": "...", "ts": "2009-12-04T10:00:00Z", "text": "..."}

``ts`` is an ISO-8601 UTC timestamp or integer epoch seconds. Malformed
records are counted and skipped; a corpus with more than 10% malformed
records raises CorpusQualityError once the stream is exhausted.
"""

from __future__ import annotations

import functools
import json
import re
import unicodedata
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CorpusQualityError, DataError

MAX_TEXT_BYTES = 560
MALFORMED_TOLERANCE = 0.10

WEEK = timedelta(days=7)

_URL_PREFIXES = ("http://", "https://")
_RETWEET_RE = re.compile(r"(?:^|\s)RT @", re.IGNORECASE)
_MENTION_RE = re.compile(r"@([A-Za-z0-9_]+)")


@dataclass(frozen=True)
class Tweet:
    """One timestamped authored message."""

    id: str
    author: str
    timestamp: datetime
    text: str


@dataclass(frozen=True)
class TopicSpec:
    """A predictable entity (movie): match keywords plus release metadata."""

    name: str
    keywords: tuple[str, ...]
    release: datetime
    theater_count: int = 0
    external_series: Mapping[str, tuple[float, ...]] | None = None

    def __post_init__(self):
        if not self.keywords:
            raise ValueError(f"topic {self.name!r} has no keywords")
        if self.theater_count < 0:
            raise ValueError(
                f"topic {self.name!r} has negative theater_count {self.theater_count}"
            )


@dataclass(frozen=True)
class CriticalPeriod:
    """Release-centered analysis window: one week before to two weeks after."""

    start: datetime
    end: datetime
    release: datetime

    def __post_init__(self):
        if not (self.start < self.release < self.end):
            raise ValueError("critical period must satisfy start < release < end")
        if self.end - self.start != 3 * WEEK:
            raise ValueError("critical period must span exactly 21 days")

    @classmethod
    def for_release(cls, release: datetime) -> "CriticalPeriod":
        return cls(start=release - WEEK, end=release + 2 * WEEK, release=release)


@dataclass(frozen=True)
class TweetFlags:
    has_url: bool
    is_retweet: bool
    mentions: tuple[str, ...]


@dataclass
class WeekPartition:
    """Critical-period partition; half-open week intervals, plus the leftovers."""

    week0: list[Tweet] = field(default_factory=list)
    week1: list[Tweet] = field(default_factory=list)
    week2: list[Tweet] = field(default_factory=list)
    excluded: list[Tweet] = field(default_factory=list)

    def weeks(self) -> tuple[list[Tweet], list[Tweet], list[Tweet]]:
        return (self.week0, self.week1, self.week2)


def parse_timestamp(value) -> datetime:
    """Parse an ISO-8601 string (Z or offset suffix) or integer epoch seconds."""
    if isinstance(value, bool):
        raise ValueError(f"bad timestamp {value!r}")
    if isinstance(value, int):
        return datetime.fromtimestamp(value, tz=timezone.utc)
    if isinstance(value, str):
        text = value.strip()
        if text.endswith(("Z", "z")):
            text = text[:-1] + "+00:00"
        try:
            parsed = datetime.fromisoformat(text)
        except ValueError as exc:
            raise ValueError(f"bad timestamp {value!r}") from exc
        if parsed.tzinfo is None:
            parsed = parsed.replace(tzinfo=timezone.utc)
        return parsed.astimezone(timezone.utc)
    raise ValueError(f"bad timestamp {value!r}")


def _parse_record(line: str, seen_ids: set[str]) -> Tweet:
    record = json.loads(line)
    if not isinstance(record, dict):
        raise ValueError("record is not a JSON object")
    for key in ("id", "author", "ts", "text"):
        if key not in record:
            raise ValueError(f"missing field {key!r}")
    tweet_id = record["id"]
    if not isinstance(tweet_id, str) or not tweet_id:
        raise ValueError("id must be a nonempty string")
    if tweet_id in seen_ids:
        raise ValueError(f"duplicate id {tweet_id!r}")
    author = record["author"]
    if not isinstance(author, str):
        raise ValueError("author must be a string")
    text = record["text"]
    if not isinstance(text, str) or not text:
        raise ValueError("text must be a nonempty string")
    if len(text.encode("utf-8")) > MAX_TEXT_BYTES:
        raise ValueError(f"text exceeds {MAX_TEXT_BYTES} bytes")
    timestamp = parse_timestamp(record["ts"])
    return Tweet(id=tweet_id, author=author, timestamp=timestamp, text=text)


class TweetStream:
    """Iterator over a JSONL corpus that tracks malformed records.

    Yields well-formed tweets in file order. After the underlying file is
    exhausted, raises CorpusQualityError if more than MALFORMED_TOLERANCE of
    the records were malformed.
    """

    def __init__(self, path):
        self.path = str(path)
        self.total = 0
        self.malformed = 0
        self.errors: list[str] = []
        try:
            self._handle = open(path, "r", encoding="utf-8")
        except OSError as exc:
            raise DataError(f"cannot read corpus file {self.path!r}: {exc}") from exc
        self._seen_ids: set[str] = set()
        self._line_no = 0
        self._done = False

    def __iter__(self) -> Iterator[Tweet]:
        return self

    def __next__(self) -> Tweet:
        if self._done:
            raise StopIteration
        for line in self._handle:
            self._line_no += 1
            stripped = line.strip()
            if not stripped:
                continue
            self.total += 1
            try:
                tweet = _parse_record(stripped, self._seen_ids)
            except (ValueError, json.JSONDecodeError) as exc:
                self.malformed += 1
                if len(self.errors) < 20:
                    self.errors.append(f"line {self._line_no}: {exc}")
                continue
            self._seen_ids.add(tweet.id)
            return tweet
        self._done = True
        self._handle.close()
        if self.total and self.malformed / self.total > MALFORMED_TOLERANCE:
            raise CorpusQualityError(
                f"{self.malformed} of {self.total} records malformed in "
                f"{self.path!r} (tolerance {MALFORMED_TOLERANCE:.0%}); "
                f"first errors: {'; '.join(self.errors[:5])}"
            )
        raise StopIteration


def load_corpus(path) -> TweetStream:
    """Open a JSONL corpus for streaming. See TweetStream for error behavior."""
    return TweetStream(path)


def _normalize(text: str) -> str:
    return unicodedata.normalize("NFC", text).casefold()


@functools.lru_cache(maxsize=4096)
def _keyword_pattern(keyword: str) -> re.Pattern:
    words = _normalize(keyword).split()
    if len(words) == 1:
        return re.compile(r"(?<!\w)" + re.escape(words[0]) + r"(?!\w)")
    # Multi-word phrases match as contiguous substrings across any whitespace.
    return re.compile(r"\s+".join(re.escape(w) for w in words))


def match_topic(tweet: Tweet, spec: TopicSpec) -> bool:
    """True iff any topic keyword occurs in the tweet text.

    Case- and Unicode-normalization-insensitive; single-word keywords only
    match on word boundaries.
    """
    text = _normalize(tweet.text)
    return any(_keyword_pattern(kw).search(text) for kw in spec.keywords)


def window(tweets: Iterable[Tweet], period: CriticalPeriod) -> WeekPartition:
    """Partition tweets into week0/week1/week2 of the critical period.

    week0 = [start, release), week1 = [release, release+7d),
    week2 = [release+7d, end). Everything outside [start, end) lands in
    ``excluded``.
    """
    split1 = period.release
    split2 = period.release + WEEK
    part = WeekPartition()
    for tweet in tweets:
        ts = tweet.timestamp
        if ts < period.start or ts >= period.end:
            part.excluded.append(tweet)
        elif ts < split1:
            part.week0.append(tweet)
        elif ts < split2:
            part.week1.append(tweet)
        else:
            part.week2.append(tweet)
    return part


def extract_flags(tweet: Tweet) -> TweetFlags:
    """Derive URL/retweet/mention flags from the tweet text alone."""
    text = tweet.text
    has_url = any(tok.startswith(_URL_PREFIXES) for tok in text.split())
    is_retweet = _RETWEET_RE.search(text) is not None
    mentions = tuple(_MENTION_RE.findall(text))
    return TweetFlags(has_url=has_url, is_retweet=is_retweet, mentions=mentions)


def load_topics(path) -> list[TopicSpec]:
    """Read the topic set: a JSON array of topic objects."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise DataError(f"cannot read topics file {str(path)!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"topics file {str(path)!r} is not valid JSON: {exc}") from exc
    if not isinstance(raw, list):
        raise DataError(f"topics file {str(path)!r} must contain a JSON array")
    topics = []
    for i, entry in enumerate(raw):
        try:
            series = entry.get("external_series")
            topics.append(
                TopicSpec(
                    name=entry["name"],
                    keywords=tuple(entry["keywords"]),
                    release=parse_timestamp(entry["release"]),
                    theater_count=int(entry.get("theater_count", 0)),
                    external_series=None
                    if series is None
                    else {k: tuple(float(v) for v in vals) for k, vals in series.items()},
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise DataError(f"bad topic entry #{i} in {str(path)!r}: {exc}") from exc
    return topics
