"""Pipeline orchestration and command-line interface.

Subcommands: ingest, features, sentiment-train, sentiment-apply, fit,
evaluate, fixture, run-all. Configuration comes from an optional JSON file
(--config) with flag overrides winning. Exit codes: 0 success, 1 usage or
configuration error, 2 data error, 3 numerical error.

All outputs are deterministic for a given spec + seed: no timestamps, sorted
keys, fixed float formatting.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import corpus as corpus_mod
from . import features as features_mod
from . import regression
from . import sentiment as sentiment_mod
from . import synth
from .errors import BuzzcastError, ConfigError, DataError, NumericalError

WEEKS = (0, 1, 2)

_RATE_DAYS = tuple(f"rate_day{d}" for d in range(7))
_HSX_DAYS = tuple(f"hsx_day{d}" for d in range(7))

PREDICTOR_SETS: dict[str, tuple[str, ...]] = {
    "avg_rate": ("avg_rate",),
    "avg_rate+thcnt": ("avg_rate", "thcnt"),
    "avg_rate+pnratio": ("avg_rate", "pnratio"),
    "rate_series": _RATE_DAYS,
    "rate_series+thcnt": _RATE_DAYS + ("thcnt",),
    "rate_series+pnratio": _RATE_DAYS + ("pnratio",),
    "hsx+thcnt": _HSX_DAYS + ("thcnt",),
}

DEFAULT_PREDICTOR_SETS = (
    "avg_rate",
    "avg_rate+thcnt",
    "avg_rate+pnratio",
    "rate_series",
    "rate_series+thcnt",
    "rate_series+pnratio",
    "hsx+thcnt",
)


@dataclass
class ExperimentSpec:
    """Everything a pipeline run needs; built from config file + flags."""

    out: Path
    corpus: Path | None = None
    topics: Path | None = None
    labels: Path | None = None
    outcomes: Path | None = None
    seed: int = 0
    jobs: int = 1
    predictors: tuple[str, ...] = DEFAULT_PREDICTOR_SETS
    ngram_order: int = 8
    scale: str = "small"

    def require(self, *names: str) -> None:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise ConfigError(
                f"missing required input(s): {', '.join(missing)} "
                "(set via --config file or flags)"
            )


def _use_color() -> bool:
    return sys.stdout.isatty() and not os.environ.get("NO_COLOR")


def _green(text: str) -> str:
    return f"\x1b[32m{text}\x1b[0m" if _use_color() else text


def _fmt(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


# ---------------------------------------------------------------------------
# Pipeline stages
# ---------------------------------------------------------------------------


@dataclass
class TopicFeatures:
    topic: corpus_mod.TopicSpec
    partition: corpus_mod.WeekPartition
    summary: features_mod.AttentionSummary
    day_rates: features_mod.RateSeries  # 7 pre-release day buckets


def _map_topics(fn, topics, jobs: int) -> dict:
    if jobs <= 1:
        return {t.name: fn(t) for t in topics}
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = {t.name: pool.submit(fn, t) for t in topics}
        return {name: fut.result() for name, fut in futures.items()}


def extract_topic_features(
    tweets: list, topics: list, jobs: int = 1
) -> dict[str, TopicFeatures]:
    """Match, window, and featurize every topic; parallel across topics."""

    def one(topic: corpus_mod.TopicSpec) -> TopicFeatures:
        period = corpus_mod.CriticalPeriod.for_release(topic.release)
        matched = [t for t in tweets if corpus_mod.match_topic(t, topic)]
        partition = corpus_mod.window(matched, period)
        summary = features_mod.attention_summary(partition, period)
        day_rates = features_mod.rate_timeseries(
            partition.week0, topic.name, origin=period.start
        )
        return TopicFeatures(topic, partition, summary, day_rates)

    return _map_topics(one, topics, jobs)


def _feature_rows(feats: dict[str, TopicFeatures], all_tweets: list):
    for name in sorted(feats):
        tf = feats[name]
        for w in WEEKS:
            yield (name, "avg_tweet_rate", w, tf.summary.avg_tweet_rate[w])
            yield (name, "url_pct", w, tf.summary.url_pct[w])
            yield (name, "retweet_pct", w, tf.summary.retweet_pct[w])
        for d, rate in enumerate(tf.day_rates.rates):
            yield (name, "rate_day", d, rate)
        yield (name, "thcnt", "", tf.topic.theater_count)
        yield (name, "matched_tweets", "", sum(len(w) for w in tf.partition.weeks()))
        for b, value in enumerate(tf.summary.tweets_per_unique_author):
            yield (name, "tweets_per_unique_author", b, value)
    stats = features_mod.author_stats(all_tweets)
    yield ("__corpus__", "unique_authors", "", stats.unique_authors)
    try:
        slope = features_mod.loglog_slope(stats.tweets_per_author_histogram)
    except ValueError:
        slope = None
    yield ("__corpus__", "author_activity_slope", "", slope)


def train_sentiment(spec: ExperimentSpec, topics: list) -> tuple:
    """Train the classifier from the labels file; returns (model, cv_accuracy)."""
    samples = sentiment_mod.load_labeled_jsonl(spec.labels)
    unanimous = sentiment_mod.filter_unanimous(samples)
    if not unanimous:
        raise DataError(f"no unanimous samples in labels file {str(spec.labels)!r}")
    # Labeled samples carry no topic tag: replace any known title.
    texts = [sentiment_mod.preprocess(text, topics) for text, _ in unanimous]
    labels = [label for _, label in unanimous]
    model = sentiment_mod.SentimentClassifier(order=spec.ngram_order).fit(texts, labels)
    try:
        cv = sentiment_mod.cross_validate(
            texts, labels, order=spec.ngram_order, folds=5, seed=spec.seed
        )
    except ValueError:
        cv = None  # too few samples per class for 5 folds
    return model, cv


def classify_topics(model, feats: dict[str, TopicFeatures]) -> dict[str, list[list]]:
    """Per-topic per-week (tweet, label, scores) triples; texts deduplicated."""
    cache: dict[str, tuple] = {}
    out: dict[str, list[list]] = {}
    for name in sorted(feats):
        tf = feats[name]
        per_week = []
        for week_tweets in tf.partition.weeks():
            rows = []
            for tweet in week_tweets:
                text = sentiment_mod.preprocess(tweet.text, tf.topic)
                if text not in cache:
                    cache[text] = model.predict_one(text)
                label, scores = cache[text]
                rows.append((tweet, label, scores))
            per_week.append(rows)
        out[name] = per_week
    return out


def _week1_pnratio(model, tf: TopicFeatures) -> float | None:
    texts = [sentiment_mod.preprocess(t.text, tf.topic) for t in tf.partition.week1]
    labels = model.predict(texts)
    return sentiment_mod.polarity_summary(labels).pn_ratio


def load_outcomes(path) -> dict[str, float]:
    try:
        with open(path, "r", encoding="utf-8", newline="") as handle:
            rows = list(csv.DictReader(handle))
    except OSError as exc:
        raise DataError(f"cannot read outcomes file {str(path)!r}: {exc}") from exc
    out = {}
    for row in rows:
        try:
            out[row["topic"]] = float(row["revenue"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DataError(f"bad outcomes row {row!r} in {str(path)!r}: {exc}") from exc
    return out


def predictor_values(
    tf: TopicFeatures, pnratio: float | None
) -> dict[str, float | None]:
    values: dict[str, float | None] = {
        "avg_rate": tf.summary.avg_tweet_rate[0],
        "thcnt": float(tf.topic.theater_count),
        "pnratio": pnratio,
    }
    for d, rate in enumerate(tf.day_rates.rates):
        values[f"rate_day{d}"] = rate
    series = (tf.topic.external_series or {}).get("hsx")
    for d in range(7):
        values[f"hsx_day{d}"] = (
            float(series[d]) if series is not None and len(series) > d else None
        )
    return values


def build_design(
    set_name: str,
    columns: tuple[str, ...],
    rows: dict[str, dict[str, float | None]],
    outcomes: dict[str, float],
) -> regression.DesignMatrix:
    """Assemble one named predictor set across topics; None values are a
    DataError naming the topic and column."""
    names = sorted(rows)
    missing_outcomes = [n for n in names if n not in outcomes]
    if missing_outcomes:
        raise DataError(
            f"outcomes file lacks topics: {', '.join(missing_outcomes)}"
        )
    matrix = []
    for name in names:
        row = []
        for col in columns:
            value = rows[name].get(col)
            if value is None:
                raise DataError(
                    f"predictor {col!r} undefined for topic {name!r} "
                    f"(cannot build set {set_name!r})"
                )
            row.append(value)
        matrix.append(row)
    y = [outcomes[n] for n in names]
    return regression.DesignMatrix.from_predictors(columns, matrix, y, response="revenue")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def run_pipeline(spec: ExperimentSpec) -> int:
    """The run-all command: every stage, one output directory."""
    spec.require("corpus", "topics", "labels", "outcomes")
    out = Path(spec.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "fits").mkdir(exist_ok=True)
    (out / "designs").mkdir(exist_ok=True)

    topics = corpus_mod.load_topics(spec.topics)
    tweets = list(corpus_mod.load_corpus(spec.corpus))
    feats = extract_topic_features(tweets, topics, spec.jobs)
    features_mod.write_feature_table(out / "features.csv", _feature_rows(feats, tweets))

    model, cv = train_sentiment(spec, topics)
    model.save(out / "model.json")
    classified = classify_topics(model, feats)
    _write_classifications(out / "classifications.csv", classified)
    _write_polarity(out / "polarity.csv", classified)

    outcomes = load_outcomes(spec.outcomes)
    rows = {}
    for name in feats:
        week1_labels = [label for _, label, _ in classified[name][1]]
        pn = sentiment_mod.polarity_summary(week1_labels).pn_ratio
        rows[name] = predictor_values(feats[name], pn)

    lines = []
    matched_total = sum(
        sum(len(w) for w in feats[n].partition.weeks()) for n in feats
    )
    lines.append("buzzcast pipeline report")
    lines.append("========================")
    lines.append(f"corpus: {Path(spec.corpus).name} ({len(tweets)} tweets)")
    lines.append(f"topics: {len(topics)} ({matched_total} matched tweet-topic pairs)")
    lines.append(f"sentiment model: order={spec.ngram_order}, "
                 f"cv_accuracy={_fmt(cv)}")
    fit_sets = spec.predictors
    if matched_total == 0:
        lines.append("WARNING: zero topics with matched tweets; no models fitted")
        fit_sets = ()
    lines.append("")
    lines.append(f"{'predictor set':<22} {'adj_R2':>8} {'model_p':>10} "
                 f"{'sig':<4} {'AMAPE':>7} {'Score':>7}")

    evaluation = {}
    for set_name in fit_sets:
        try:
            design = build_design(set_name, PREDICTOR_SETS[set_name], rows, outcomes)
            fit = regression.fit_design(design)
        except (BuzzcastError, ValueError) as exc:
            lines.append(f"{set_name:<22} skipped: {exc}")
            continue
        design.to_csv(out / "designs" / f"{_safe(set_name)}.csv")
        regression.write_fit_json(out / "fits" / f"{_safe(set_name)}.json", fit)
        predictions = [
            fit.predict({c: design.X[i][j] for j, c in enumerate(design.columns)})
            for i in range(design.X.shape[0])
        ]
        err = regression.amape(predictions, design.y)
        evaluation[set_name] = {
            "adj_r2": fit.adj_r2,
            "model_p": fit.model_p,
            "amape": err,
            "score": 100.0 - err,
            "n": fit.n,
            "p": fit.p,
        }
        stars = "" if fit.model_p is None else regression.significance_stars(fit.model_p)
        lines.append(
            f"{set_name:<22} {fit.adj_r2:>8.4f} {_fmt(fit.model_p):>10} "
            f"{stars:<4} {err:>7.3f} {100.0 - err:>7.3f}"
        )

    with open(out / "evaluation.json", "w", encoding="utf-8") as handle:
        json.dump(evaluation, handle, sort_keys=True, indent=2)
        handle.write("\n")
    report = "\n".join(lines) + "\n"
    with open(out / "summary.txt", "w", encoding="utf-8") as handle:
        handle.write(report)
    print(report, end="")
    print(_green(f"report written to {out}"))
    return 0


def _safe(name: str) -> str:
    return name.replace("+", "_plus_")


def _write_classifications(path, classified: dict[str, list[list]]) -> None:
    order = (
        sentiment_mod.SentimentLabel.POSITIVE,
        sentiment_mod.SentimentLabel.NEGATIVE,
        sentiment_mod.SentimentLabel.NEUTRAL,
    )
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["topic", "id", "label", "score_positive", "score_negative", "score_neutral"]
        )
        for name in sorted(classified):
            rows = [row for week in classified[name] for row in week]
            for tweet, label, scores in sorted(rows, key=lambda r: r[0].id):
                writer.writerow(
                    [name, tweet.id, label.value] + [repr(scores[c]) for c in order]
                )


def _write_polarity(path, classified: dict[str, list[list]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["topic", "week", "positive", "negative", "neutral", "subjectivity", "pn_ratio"]
        )
        for name in sorted(classified):
            for week, rows in enumerate(classified[name]):
                summary = sentiment_mod.polarity_summary([label for _, label, _ in rows])
                writer.writerow(
                    [
                        name,
                        week,
                        summary.positive,
                        summary.negative,
                        summary.neutral,
                        _fmt(summary.subjectivity),
                        _fmt(summary.pn_ratio),
                    ]
                )


def cmd_ingest(spec: ExperimentSpec) -> int:
    spec.require("corpus")
    stream = corpus_mod.load_corpus(spec.corpus)
    tweets = list(stream)
    report = {
        "corpus": str(spec.corpus),
        "tweets": len(tweets),
        "malformed": stream.malformed,
        "errors": stream.errors,
    }
    if spec.topics is not None:
        topics = corpus_mod.load_topics(spec.topics)
        report["topic_matches"] = {
            t.name: sum(1 for tw in tweets if corpus_mod.match_topic(tw, t))
            for t in sorted(topics, key=lambda t: t.name)
        }
    out = Path(spec.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "ingest.json", "w", encoding="utf-8") as handle:
        json.dump(report, handle, sort_keys=True, indent=2)
        handle.write("\n")
    print(f"{report['tweets']} tweets, {report['malformed']} malformed")
    return 0


def cmd_features(spec: ExperimentSpec) -> int:
    spec.require("corpus", "topics")
    topics = corpus_mod.load_topics(spec.topics)
    tweets = list(corpus_mod.load_corpus(spec.corpus))
    feats = extract_topic_features(tweets, topics, spec.jobs)
    out = Path(spec.out)
    out.mkdir(parents=True, exist_ok=True)
    features_mod.write_feature_table(out / "features.csv", _feature_rows(feats, tweets))
    print(f"features for {len(topics)} topics written to {out / 'features.csv'}")
    return 0


def cmd_sentiment_train(spec: ExperimentSpec) -> int:
    spec.require("labels")
    topics = corpus_mod.load_topics(spec.topics) if spec.topics else []
    model, cv = train_sentiment(spec, topics)
    out = Path(spec.out)
    out.mkdir(parents=True, exist_ok=True)
    model.save(out / "model.json")
    print(f"model (order={spec.ngram_order}) written to {out / 'model.json'}; "
          f"cv_accuracy={_fmt(cv)}")
    return 0


def cmd_sentiment_apply(spec: ExperimentSpec) -> int:
    spec.require("corpus", "topics")
    model_path = Path(spec.out) / "model.json"
    if not model_path.exists():
        raise DataError(
            f"no trained model at {str(model_path)!r}; run sentiment-train first"
        )
    model = sentiment_mod.SentimentClassifier.load(model_path)
    topics = corpus_mod.load_topics(spec.topics)
    tweets = list(corpus_mod.load_corpus(spec.corpus))
    feats = extract_topic_features(tweets, topics, spec.jobs)
    out = Path(spec.out)
    classified = classify_topics(model, feats)
    _write_classifications(out / "classifications.csv", classified)
    _write_polarity(out / "polarity.csv", classified)
    print(f"classifications written to {out / 'classifications.csv'}")
    return 0


def cmd_fit(spec: ExperimentSpec) -> int:
    spec.require("corpus", "topics", "outcomes")
    topics = corpus_mod.load_topics(spec.topics)
    tweets = list(corpus_mod.load_corpus(spec.corpus))
    feats = extract_topic_features(tweets, topics, spec.jobs)
    needs_pn = any("pnratio" in PREDICTOR_SETS[s] for s in spec.predictors)
    pn: dict[str, float | None] = {name: None for name in feats}
    if needs_pn:
        spec.require("labels")
        model, _ = train_sentiment(spec, topics)
        pn = {name: _week1_pnratio(model, feats[name]) for name in feats}
    rows = {name: predictor_values(feats[name], pn[name]) for name in feats}
    outcomes = load_outcomes(spec.outcomes)
    out = Path(spec.out)
    (out / "fits").mkdir(parents=True, exist_ok=True)
    (out / "designs").mkdir(parents=True, exist_ok=True)
    for set_name in spec.predictors:
        design = build_design(set_name, PREDICTOR_SETS[set_name], rows, outcomes)
        fit = regression.fit_design(design)
        design.to_csv(out / "designs" / f"{_safe(set_name)}.csv")
        regression.write_fit_json(out / "fits" / f"{_safe(set_name)}.json", fit)
        print(f"{set_name}: adj_R2={fit.adj_r2:.4f} model_p={_fmt(fit.model_p)}")
    return 0


def cmd_evaluate(spec: ExperimentSpec) -> int:
    """Fit the requested predictor sets and report AMAPE/Score per set."""
    spec.require("corpus", "topics", "outcomes")
    topics = corpus_mod.load_topics(spec.topics)
    tweets = list(corpus_mod.load_corpus(spec.corpus))
    feats = extract_topic_features(tweets, topics, spec.jobs)
    needs_pn = any("pnratio" in PREDICTOR_SETS[s] for s in spec.predictors)
    pn: dict[str, float | None] = {name: None for name in feats}
    if needs_pn:
        spec.require("labels")
        model, _ = train_sentiment(spec, topics)
        pn = {name: _week1_pnratio(model, feats[name]) for name in feats}
    rows = {name: predictor_values(feats[name], pn[name]) for name in feats}
    outcomes = load_outcomes(spec.outcomes)
    out = Path(spec.out)
    out.mkdir(parents=True, exist_ok=True)
    evaluation = {}
    for set_name in spec.predictors:
        design = build_design(set_name, PREDICTOR_SETS[set_name], rows, outcomes)
        fit = regression.fit_design(design)
        predictions = [
            fit.predict({c: design.X[i][j] for j, c in enumerate(design.columns)})
            for i in range(design.X.shape[0])
        ]
        err = regression.amape(predictions, design.y)
        evaluation[set_name] = {
            "adj_r2": fit.adj_r2,
            "model_p": fit.model_p,
            "amape": err,
            "score": 100.0 - err,
            "n": fit.n,
            "p": fit.p,
        }
        print(f"{set_name}: AMAPE={err:.4f} Score={100.0 - err:.4f}")
    with open(out / "evaluation.json", "w", encoding="utf-8") as handle:
        json.dump(evaluation, handle, sort_keys=True, indent=2)
        handle.write("\n")
    return 0


def cmd_fixture(spec: ExperimentSpec) -> int:
    paths = synth.make_fixture(spec.out, seed=spec.seed, scale=spec.scale)
    print(
        "fixture written:\n  "
        + "\n  ".join(
            str(p) for p in (paths.corpus, paths.topics, paths.labels, paths.outcomes)
        )
    )
    return 0


def cmd_run_all(spec: ExperimentSpec) -> int:
    return run_pipeline(spec)


# ---------------------------------------------------------------------------
# Argument handling
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    # Usage problems must exit 1, not argparse's default 2.
    def error(self, message):
        raise ConfigError(message)


_CONFIG_KEYS = {
    "corpus", "topics", "labels", "outcomes", "out", "seed", "jobs",
    "predictors", "ngram_order", "scale",
}


def _load_config(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            config = json.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {str(path)!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {str(path)!r} is not valid JSON: {exc}") from exc
    if not isinstance(config, dict):
        raise ConfigError(f"config file {str(path)!r} must hold a JSON object")
    unknown = set(config) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(
            f"unknown config key(s): {', '.join(sorted(unknown))}; "
            f"known keys: {', '.join(sorted(_CONFIG_KEYS))}"
        )
    return config


def _parse_predictors(value) -> tuple[str, ...]:
    if isinstance(value, str):
        names = [v.strip() for v in value.split(",") if v.strip()]
    else:
        names = list(value)
    if not names:
        raise ConfigError("predictor set list must be nonempty")
    unknown = [n for n in names if n not in PREDICTOR_SETS]
    if unknown:
        raise ConfigError(
            f"unknown predictor set(s): {', '.join(unknown)}; "
            f"available: {', '.join(PREDICTOR_SETS)}"
        )
    return tuple(names)


def build_spec(args: argparse.Namespace) -> ExperimentSpec:
    config = _load_config(args.config) if args.config else {}
    merged = dict(config)
    for key in ("corpus", "topics", "labels", "outcomes", "out", "seed", "jobs",
                "ngram_order", "scale"):
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    if getattr(args, "predictors", None) is not None:
        merged["predictors"] = args.predictors
    if "out" not in merged:
        raise ConfigError("an output directory is required (--out or config 'out')")
    spec = ExperimentSpec(out=Path(merged["out"]))
    for key in ("corpus", "topics", "labels", "outcomes"):
        if merged.get(key) is not None:
            setattr(spec, key, Path(merged[key]))
    if "seed" in merged:
        spec.seed = int(merged["seed"])
    if "jobs" in merged:
        spec.jobs = int(merged["jobs"])
        if spec.jobs < 1:
            raise ConfigError(f"--jobs must be >= 1, got {spec.jobs}")
    if "predictors" in merged:
        spec.predictors = _parse_predictors(merged["predictors"])
    if "ngram_order" in merged:
        spec.ngram_order = int(merged["ngram_order"])
        if spec.ngram_order < 1:
            raise ConfigError(f"--ngram-order must be >= 1, got {spec.ngram_order}")
    if "scale" in merged:
        spec.scale = str(merged["scale"])
    return spec


def build_parser() -> _Parser:
    parser = _Parser(prog="buzzcast", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "ingest": cmd_ingest,
        "features": cmd_features,
        "sentiment-train": cmd_sentiment_train,
        "sentiment-apply": cmd_sentiment_apply,
        "fit": cmd_fit,
        "evaluate": cmd_evaluate,
        "fixture": cmd_fixture,
        "run-all": cmd_run_all,
    }
    for name, func in commands.items():
        p = sub.add_parser(name)
        p.set_defaults(func=func)
        p.add_argument("--config", type=Path, default=None)
        p.add_argument("--corpus", type=Path, default=None)
        p.add_argument("--topics", type=Path, default=None)
        p.add_argument("--labels", type=Path, default=None)
        p.add_argument("--outcomes", type=Path, default=None)
        p.add_argument("--out", type=Path, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--jobs", type=int, default=None)
        p.add_argument("--predictors", type=str, default=None,
                       help="comma-separated predictor set names")
        p.add_argument("--ngram-order", dest="ngram_order", type=int, default=None)
        if name == "fixture":
            p.add_argument("--scale", choices=sorted(synth.SCALES), default=None)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        spec = build_spec(args)
        return args.func(spec)
    except ConfigError as exc:
        print(f"error (config): {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"error (data): {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"error (numerical): {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
