"""Attention features: tweet rates, URL/retweet shares, author activity.

Percentages over empty weeks are reported as None rather than 0 so that a
silent 0/0 can never be mistaken for "no URLs". Rates use exact rational
arithmetic up to the final division.
"""

from __future__ import annotations

import csv
import math
from collections import Counter
from dataclasses import dataclass
from datetime import datetime, timedelta
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .corpus import CriticalPeriod, Tweet, WeekPartition, extract_flags

DAY = timedelta(days=1)


@dataclass(frozen=True)
class RateSeries:
    """Per-topic tweet counts bucketed over a window, with per-hour rates."""

    topic: str
    origin: datetime
    bucket_width: timedelta
    counts: tuple[int, ...]

    @property
    def bucket_hours(self) -> Fraction:
        return Fraction(_exact_seconds(self.bucket_width), 3600)

    @property
    def rates(self) -> tuple[float, ...]:
        hours = self.bucket_hours
        return tuple(float(Fraction(c) / hours) for c in self.counts)


@dataclass(frozen=True)
class AuthorStats:
    unique_authors: int
    tweets_per_author_histogram: dict[int, int]
    topics_per_author_histogram: dict[int, int]


@dataclass(frozen=True)
class AttentionSummary:
    """Week-level URL/retweet percentages and rates; None marks empty weeks."""

    url_pct: tuple[float | None, ...]
    retweet_pct: tuple[float | None, ...]
    avg_tweet_rate: tuple[float, ...]
    tweets_per_unique_author: tuple[float | None, ...]


def _exact_seconds(delta: timedelta) -> Fraction:
    return Fraction(
        (delta.days * 86400 + delta.seconds) * 10**6 + delta.microseconds, 10**6
    )


def tweet_rate(tweets: Iterable[Tweet], start: datetime, end: datetime) -> float:
    """Tweets per hour over the half-open window [start, end)."""
    if end <= start:
        raise ValueError(f"window must have positive length, got [{start}, {end})")
    count = sum(1 for t in tweets if start <= t.timestamp < end)
    hours = _exact_seconds(end - start) / 3600
    return float(Fraction(count) / hours)


def rate_timeseries(
    tweets: Iterable[Tweet],
    topic: str,
    origin: datetime,
    buckets: int = 7,
    width: timedelta = DAY,
) -> RateSeries:
    """Bucketed tweet counts from ``origin``; tweets outside the span are ignored."""
    if buckets < 1:
        raise ValueError(f"need at least one bucket, got {buckets}")
    if width <= timedelta(0):
        raise ValueError(f"bucket width must be positive, got {width}")
    width_sec = _exact_seconds(width)
    counts = [0] * buckets
    for tweet in tweets:
        offset = _exact_seconds(tweet.timestamp - origin)
        if offset < 0:
            continue
        idx = int(offset / width_sec)
        if idx < buckets:
            counts[idx] += 1
    return RateSeries(topic=topic, origin=origin, bucket_width=width, counts=tuple(counts))


def _share_pct(tweets: Sequence[Tweet], predicate) -> float | None:
    if not tweets:
        return None
    hits = sum(1 for t in tweets if predicate(t))
    return 100.0 * hits / len(tweets)


def weekly_percentages(
    weeks: Sequence[Sequence[Tweet]],
) -> tuple[tuple[float | None, ...], tuple[float | None, ...]]:
    """URL and retweet percentages per week; empty weeks report None."""
    url = tuple(_share_pct(w, lambda t: extract_flags(t).has_url) for w in weeks)
    retweet = tuple(_share_pct(w, lambda t: extract_flags(t).is_retweet) for w in weeks)
    return url, retweet


def attention_summary(
    partition: WeekPartition,
    period: CriticalPeriod,
    bucket_width: timedelta = DAY,
) -> AttentionSummary:
    """Assemble week percentages, per-week average rates, and the per-bucket
    tweets-per-unique-author ratio over the whole critical period."""
    weeks = partition.weeks()
    url_pct, retweet_pct = weekly_percentages(weeks)
    bounds = (period.start, period.release, period.release + timedelta(days=7), period.end)
    avg_rate = tuple(
        tweet_rate(weeks[i], bounds[i], bounds[i + 1]) for i in range(3)
    )

    width_sec = _exact_seconds(bucket_width)
    n_buckets = math.ceil(_exact_seconds(period.end - period.start) / width_sec)
    per_bucket_tweets = [0] * n_buckets
    per_bucket_authors: list[set[str]] = [set() for _ in range(n_buckets)]
    for week in weeks:
        for tweet in week:
            idx = int(_exact_seconds(tweet.timestamp - period.start) / width_sec)
            per_bucket_tweets[idx] += 1
            per_bucket_authors[idx].add(tweet.author)
    ratio = tuple(
        (per_bucket_tweets[i] / len(per_bucket_authors[i])) if per_bucket_authors[i] else None
        for i in range(n_buckets)
    )
    return AttentionSummary(
        url_pct=url_pct,
        retweet_pct=retweet_pct,
        avg_tweet_rate=avg_rate,
        tweets_per_unique_author=ratio,
    )


def author_stats(
    tweets: Iterable[Tweet],
    topic_assignments: Mapping[str, str] | None = None,
) -> AuthorStats:
    """Author activity histograms.

    ``topic_assignments`` maps tweet id -> topic name; when given, the
    topics-per-author histogram counts distinct topics per author.
    """
    per_author = Counter()
    author_topics: dict[str, set[str]] = {}
    for tweet in tweets:
        per_author[tweet.author] += 1
        if topic_assignments is not None and tweet.id in topic_assignments:
            author_topics.setdefault(tweet.author, set()).add(topic_assignments[tweet.id])
    tweets_hist = Counter(per_author.values())
    topics_hist = Counter(len(v) for v in author_topics.values())
    return AuthorStats(
        unique_authors=len(per_author),
        tweets_per_author_histogram=dict(tweets_hist),
        topics_per_author_histogram=dict(topics_hist),
    )


def loglog_slope(histogram: Mapping[int, float]) -> float:
    """Least-squares slope of log10(frequency) vs log10(count).

    Zero-frequency bins are excluded; at least three distinct counts with
    nonzero frequency are required.
    """
    points = [
        (math.log10(count), math.log10(freq))
        for count, freq in histogram.items()
        if freq > 0 and count > 0
    ]
    if len(points) < 3:
        raise ValueError(
            f"need at least 3 nonzero histogram bins for a slope, got {len(points)}"
        )
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x_mean = sum(xs) / len(xs)
    y_mean = sum(ys) / len(ys)
    sxx = sum((x - x_mean) ** 2 for x in xs)
    if sxx == 0.0:
        raise ValueError("all histogram counts identical; slope undefined")
    sxy = sum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
    return sxy / sxx


def write_feature_table(path, rows: Iterable[tuple[str, str, object, object]]) -> None:
    """Emit a feature table CSV: one row per (topic, feature, index, value).

    None values are written as "NA".
    """
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["topic", "feature", "index", "value"])
        for topic, feature, index, value in rows:
            writer.writerow([topic, feature, index, "NA" if value is None else value])
