"""buzzcast: forecast real-world outcomes from social-media chatter.

Pipeline: ingest timestamped tweet corpora, extract attention features
(tweet rates, URL/retweet shares, author activity), classify sentiment with
per-category character n-gram language models, and fit least-squares models
with full inference (adjusted R-squared, t/F p-values) against outcome data.
"""

from .corpus import (
    CriticalPeriod,
    TopicSpec,
    Tweet,
    TweetFlags,
    WeekPartition,
    extract_flags,
    load_corpus,
    load_topics,
    match_topic,
    window,
)
from .errors import (
    BuzzcastError,
    ConfigError,
    CorpusQualityError,
    DataError,
    NumericalError,
    SingularDesignError,
)
from .features import (
    AttentionSummary,
    AuthorStats,
    RateSeries,
    attention_summary,
    author_stats,
    loglog_slope,
    rate_timeseries,
    tweet_rate,
    weekly_percentages,
)
from .regression import (
    DesignMatrix,
    OlsRegressor,
    RegressionFit,
    adjusted_r2,
    amape,
    amape_score,
    fit_design,
    pearson,
    significance_stars,
)
from .sentiment import (
    LabeledSample,
    PolaritySummary,
    SentimentClassifier,
    SentimentLabel,
    cross_validate,
    filter_unanimous,
    polarity_summary,
    preprocess,
)
from .synth import make_fixture, synth_general_design, synth_rate_design

__version__ = "0.1.0"

__all__ = [
    "AttentionSummary",
    "AuthorStats",
    "BuzzcastError",
    "ConfigError",
    "CorpusQualityError",
    "CriticalPeriod",
    "DataError",
    "DesignMatrix",
    "LabeledSample",
    "NumericalError",
    "OlsRegressor",
    "PolaritySummary",
    "RateSeries",
    "RegressionFit",
    "SentimentClassifier",
    "SentimentLabel",
    "SingularDesignError",
    "TopicSpec",
    "Tweet",
    "TweetFlags",
    "WeekPartition",
    "adjusted_r2",
    "amape",
    "amape_score",
    "attention_summary",
    "author_stats",
    "cross_validate",
    "extract_flags",
    "filter_unanimous",
    "fit_design",
    "load_corpus",
    "load_topics",
    "loglog_slope",
    "make_fixture",
    "match_topic",
    "pearson",
    "polarity_summary",
    "preprocess",
    "rate_timeseries",
    "significance_stars",
    "synth_general_design",
    "synth_rate_design",
    "tweet_rate",
    "weekly_percentages",
    "window",
]
