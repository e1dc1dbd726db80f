"""Synthetic data generators for property tests and end-to-end fixtures.

The general model draws attention (heavy-tailed), polarity, and distribution
predictors and builds the response as a fixed linear combination plus
Gaussian noise. ``make_fixture`` turns the same model into a self-consistent
file bundle: a tweet corpus whose per-topic rates, sentiment-label mix, and
outcome values were generated jointly, so the pipeline can recover what was
planted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path

import numpy as np

from .regression import DesignMatrix

GENERAL_COLUMNS = ("attention", "polarity", "distribution")

DEFAULT_BETAS = (2.5e6, 2.0e5, 1.0e3)


@dataclass(frozen=True)
class GeneralModelRanges:
    """Default predictor ranges; attention is log-normal (heavy-tailed buzz),
    polarity spans a PNratio-like band, distribution a theater-count-like one."""

    attention_log_mean: float = 1.0
    attention_log_sd: float = 0.8
    polarity_low: float = 0.5
    polarity_high: float = 10.0
    distribution_low: int = 500
    distribution_high: int = 4000


def synth_general_design(
    betas: tuple[float, float, float] = DEFAULT_BETAS,
    noise_sd: float = 0.0,
    n: int = 24,
    seed: int = 0,
    ranges: GeneralModelRanges = GeneralModelRanges(),
) -> DesignMatrix:
    """Draw (attention, polarity, distribution) rows and the linear response."""
    if n < 4:
        raise ValueError(f"need n >= 4 observations, got {n}")
    if noise_sd < 0:
        raise ValueError(f"noise_sd must be nonnegative, got {noise_sd}")
    rng = np.random.default_rng(seed)
    attention = rng.lognormal(ranges.attention_log_mean, ranges.attention_log_sd, n)
    polarity = rng.uniform(ranges.polarity_low, ranges.polarity_high, n)
    distribution = rng.integers(
        ranges.distribution_low, ranges.distribution_high + 1, n
    ).astype(float)
    noise = rng.normal(0.0, noise_sd, n) if noise_sd > 0 else np.zeros(n)
    beta_a, beta_p, beta_d = betas
    y = beta_a * attention + beta_p * polarity + beta_d * distribution + noise
    return DesignMatrix.from_predictors(
        GENERAL_COLUMNS,
        np.column_stack([attention, polarity, distribution]),
        y,
        response="revenue",
    )


RATE_COLUMNS = tuple(f"rate_day{d}" for d in range(7)) + ("thcnt",)

# Pre-release buzz ramps up toward the release day.
_DAY_RAMP = np.array([0.5, 0.6, 0.7, 0.85, 1.0, 1.3, 1.7])
_RATE_BETAS = np.array([2.0e5, 1.5e5, 1.0e5, 3.0e5, 4.0e5, 8.0e5, 1.5e6, 4.0e3])


def synth_rate_design(
    n: int = 24,
    noise_frac: float = 0.05,
    seed: int = 0,
) -> DesignMatrix:
    """Paper-shaped design: 7 daily pre-release rates + theater count.

    The response is a fixed linear combination of the columns plus Gaussian
    noise with standard deviation ``noise_frac`` times the clean response's
    standard deviation.
    """
    if n < 10:
        raise ValueError(f"need n >= 10 rows for the 9-column design, got {n}")
    if noise_frac < 0:
        raise ValueError(f"noise_frac must be nonnegative, got {noise_frac}")
    rng = np.random.default_rng(seed)
    base = rng.lognormal(1.0, 0.9, n)
    jitter = rng.lognormal(0.0, 0.25, size=(n, 7))
    rates = base[:, None] * _DAY_RAMP[None, :] * jitter
    thcnt = rng.integers(500, 4001, n).astype(float)
    X = np.column_stack([rates, thcnt])
    y_clean = X @ _RATE_BETAS
    sd = float(np.std(y_clean))
    y = y_clean + rng.normal(0.0, noise_frac * sd, n)
    return DesignMatrix.from_predictors(RATE_COLUMNS, X, y, response="revenue")


# ---------------------------------------------------------------------------
# File fixture
# ---------------------------------------------------------------------------

_ADJECTIVES = ("crimson", "silver", "golden", "midnight", "velvet", "iron")
_NOUNS = ("harbor", "orchard", "lantern", "meridian")

_POSITIVE_TEMPLATES = (
    "Loved {title}!! best movie this year",
    "{title} was absolutely brilliant, go watch it",
    "what a fantastic film {title} turned out to be",
    "just saw {title} and it blew me away, stunning work",
    "{title} is a masterpiece, gorgeous and thrilling!",
    "cannot stop smiling after {title}, wonderful cast",
    "{title} exceeded every hope, superb ending!!",
    "highly recommend {title}, pure joy on screen",
)
_NEGATIVE_TEMPLATES = (
    "{title} was awful, total waste of an evening",
    "hated {title}, dull plot and worse acting",
    "{title} is a boring mess, skip it",
    "walked out of {title}, painfully bad dialogue",
    "{title} disappointed badly, flat and lifeless",
    "avoid {title}, clumsy script and cheap effects",
    "{title} dragged forever, terrible pacing?",
    "regret paying for {title}, truly dreadful",
)
_NEUTRAL_TEMPLATES = (
    "going to see {title} tonight with friends",
    "tickets for {title} booked for saturday",
    "{title} opens in theaters this friday",
    "trailer for {title} is out now",
    "anyone watching {title} this weekend?",
    "{title} showtimes posted at the cineplex",
    "heading downtown for {title} later",
    "{title} premiere coverage on the news",
)

_TEMPLATES = {
    "positive": _POSITIVE_TEMPLATES,
    "negative": _NEGATIVE_TEMPLATES,
    "neutral": _NEUTRAL_TEMPLATES,
}

_HSX_RAMP = np.array([0.82, 0.85, 0.88, 0.92, 0.95, 0.98, 1.0])


@dataclass(frozen=True)
class FixturePaths:
    corpus: Path
    topics: Path
    labels: Path
    outcomes: Path


@dataclass(frozen=True)
class _ScaleConfig:
    n_topics: int
    week0_low: int
    week0_high: int
    labels_per_class: int
    # attention coefficient is per scale: small corpora have tiny hourly
    # rates, so the coefficient compensates to keep attention the dominant
    # revenue driver at either scale
    beta_a: float


SCALES = {
    # small: <= 1000 tweets total even at the worst-case boost/decay draws
    "small": _ScaleConfig(
        n_topics=12, week0_low=10, week0_high=16, labels_per_class=40, beta_a=1.2e8
    ),
    # paper: 24 topics over full 21-day critical periods
    "paper": _ScaleConfig(
        n_topics=24, week0_low=120, week0_high=480, labels_per_class=150,
        beta_a=DEFAULT_BETAS[0],
    ),
}


def fixture_titles(n: int) -> list[str]:
    titles = [f"{a} {b}" for a in _ADJECTIVES for b in _NOUNS]
    if n > len(titles):
        raise ValueError(f"at most {len(titles)} fixture topics supported, got {n}")
    return titles[:n]


def _render(rng, template: str, title: str, with_url: bool, retweet: bool) -> str:
    text = template.format(title=title.title())
    if retweet:
        text = f"RT @fan{rng.integers(1, 400)}: {text}"
    if with_url:
        text = f"{text} http://mv.example/{_slug(rng)}"
    return text


def _slug(rng) -> str:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return "".join(letters[i] for i in rng.integers(0, 26, 6))


def _label_counts(n: int, pn_target: float, neutral_frac: float) -> tuple[int, int, int]:
    # Split n into (pos, neg, neu) with pos/neg ~= pn_target; at least one of
    # each so downstream ratios stay defined.
    neu = max(1, round(n * neutral_frac))
    subjective = n - neu
    neg = max(1, round(subjective / (1.0 + pn_target)))
    pos = subjective - neg
    if pos < 1:
        pos = 1
        neu = n - pos - neg
    return pos, neg, neu


def make_fixture(out_dir, seed: int = 0, scale: str = "small") -> FixturePaths:
    """Write a self-consistent corpus/topics/labels/outcomes bundle.

    Per topic, the planted values are: attention = realized week-0 tweets per
    hour, polarity = realized week-1 positive/negative label ratio,
    distribution = theater count. The outcome file holds the general-model
    response computed from exactly those values plus small Gaussian noise.
    Byte-identical for a given (seed, scale).
    """
    if scale not in SCALES:
        raise ValueError(f"scale must be one of {sorted(SCALES)}, got {scale!r}")
    cfg = SCALES[scale]
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)

    titles = fixture_titles(cfg.n_topics)
    base_release = datetime(2009, 11, 13, 0, 0, 0, tzinfo=timezone.utc)

    topics = []
    outcomes = []
    all_tweets = []  # (timestamp, author, text)
    _, beta_p, beta_d = DEFAULT_BETAS
    beta_a = cfg.beta_a

    n_authors = max(60, cfg.n_topics * cfg.week0_high)
    ranks = np.arange(1, n_authors + 1, dtype=float)
    author_weights = ranks ** -1.2
    author_weights /= author_weights.sum()

    for idx, title in enumerate(titles):
        release = base_release + timedelta(weeks=idx // 2)
        week0_count = int(rng.integers(cfg.week0_low, cfg.week0_high + 1))
        boost = float(rng.uniform(1.4, 2.2))
        decay = float(rng.uniform(0.5, 0.9))
        week_counts = (
            week0_count,
            max(3, round(week0_count * boost)),
            max(3, round(week0_count * boost * decay)),
        )
        pn_target = float(rng.uniform(0.8, 8.0))
        neutral_frac = float(rng.uniform(0.35, 0.55))
        theater_count = int(rng.integers(800, 4001))

        week1_pn = None
        for week, count in enumerate(week_counts):
            week_start = release + timedelta(weeks=week - 1)
            pos, neg, neu = _label_counts(count, pn_target, neutral_frac)
            if week == 1:
                week1_pn = pos / neg
            labels = ["positive"] * pos + ["negative"] * neg + ["neutral"] * neu
            rng.shuffle(labels)
            url_share = 0.40 if week == 0 else 0.24
            n_url = round(count * url_share)
            n_rt = round(count * 0.12)
            day_counts = rng.multinomial(count, _DAY_RAMP / _DAY_RAMP.sum())
            authors = rng.choice(n_authors, size=count, p=author_weights)
            template_idx = rng.integers(0, 8, size=count)
            seconds = rng.integers(0, 86400, size=count)
            pending = 0
            for day, day_count in enumerate(day_counts):
                for _ in range(day_count):
                    label = labels[pending]
                    template = _TEMPLATES[label][int(template_idx[pending])]
                    text = _render(
                        rng,
                        template,
                        title,
                        with_url=pending < n_url,
                        retweet=count - 1 - pending < n_rt,
                    )
                    ts = (
                        week_start
                        + timedelta(days=day)
                        + timedelta(seconds=int(seconds[pending]))
                    )
                    author = f"author{1 + int(authors[pending])}"
                    all_tweets.append((ts, author, text))
                    pending += 1

        attention = week_counts[0] / 168.0
        hsx_scale = (
            beta_a * attention + beta_p * week1_pn + beta_d * theater_count
        ) / 4.0e5
        hsx = [
            round(float(hsx_scale * _HSX_RAMP[d] * rng.lognormal(0.0, 0.10)), 4)
            for d in range(7)
        ]
        topics.append(
            {
                "name": title,
                "keywords": [title],
                "release": release.strftime("%Y-%m-%dT%H:%M:%SZ"),
                "theater_count": theater_count,
                "external_series": {"hsx": hsx},
            }
        )
        revenue = (
            beta_a * attention
            + beta_p * week1_pn
            + beta_d * theater_count
            + float(rng.normal(0.0, 2.0e5))
        )
        outcomes.append((title, round(revenue, 2)))

    paths = FixturePaths(
        corpus=out / "corpus.jsonl",
        topics=out / "topics.json",
        labels=out / "labels.jsonl",
        outcomes=out / "outcomes.csv",
    )

    all_tweets.sort(key=lambda item: (item[0], item[1], item[2]))
    with open(paths.corpus, "w", encoding="utf-8") as handle:
        for i, (ts, author, text) in enumerate(all_tweets):
            record = {
                "id": f"t{i:07d}",
                "author": author,
                "ts": ts.strftime("%Y-%m-%dT%H:%M:%SZ"),
                "text": text,
            }
            handle.write(json.dumps(record, sort_keys=True) + "\n")

    with open(paths.topics, "w", encoding="utf-8") as handle:
        json.dump(topics, handle, indent=2, sort_keys=True)
        handle.write("\n")

    with open(paths.labels, "w", encoding="utf-8") as handle:
        for record in _labeled_samples(rng, titles, cfg.labels_per_class):
            handle.write(json.dumps(record, sort_keys=True) + "\n")

    with open(paths.outcomes, "w", encoding="utf-8") as handle:
        handle.write("topic,revenue\n")
        for title, revenue in sorted(outcomes):
            handle.write(f"{title},{revenue!r}\n")

    return paths


def _labeled_samples(rng, titles, per_class) -> list[dict]:
    records = []
    classes = ("positive", "negative", "neutral")
    for cls in classes:
        templates = _TEMPLATES[cls]
        for _ in range(per_class):
            title = titles[int(rng.integers(0, len(titles)))]
            template = templates[int(rng.integers(0, len(templates)))]
            text = _render(
                rng,
                template,
                title,
                with_url=bool(rng.random() < 0.3),
                retweet=bool(rng.random() < 0.1),
            )
            records.append({"text": text, "votes": [cls, cls, cls]})
    # A sprinkle of non-unanimous samples the unanimity filter must drop.
    for i in range(max(6, per_class // 6)):
        cls = classes[i % 3]
        other = classes[(i + 1) % 3]
        title = titles[int(rng.integers(0, len(titles)))]
        template = _TEMPLATES[cls][int(rng.integers(0, len(_TEMPLATES[cls])))]
        records.append(
            {
                "text": _render(rng, template, title, with_url=False, retweet=False),
                "votes": [cls, cls, other],
            }
        )
    order = rng.permutation(len(records))
    return [records[i] for i in order]
