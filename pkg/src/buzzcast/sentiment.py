"""Sentiment pipeline: preprocessing, a character n-gram language-model
classifier, cross-validation, and polarity ratios.

The classifier keeps one character-sequence model per category. Each
training string is framed with reserved start/end sentinels and every
k-gram (k = 1..order) of the framed string is counted. Next-character
probabilities interpolate observed counts with lower-order estimates by
Witten-Bell weighting, bottoming out at a uniform floor of
1/(|vocabulary| + 1); the end sentinel is the extra outcome that makes the
distribution over vocabulary + end sum to exactly one.
"""

from __future__ import annotations

import json
import math
import random
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from typing import Iterable, Mapping, Sequence

from sklearn.base import BaseEstimator

from .corpus import TopicSpec
from .errors import DataError

START = "\x02"
END = "\x03"

MODEL_FORMAT = "buzzcast-sentiment-model"
MODEL_VERSION = 1

_URL_RE = re.compile(r"https?://\S+")
_USER_RE = re.compile(r"@[a-z0-9_]+")
_NON_ALNUM_RE = re.compile(r"[^a-zA-Z0-9\s]")


class SentimentLabel(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


# Fixed, documented, arbitrary tie-break order.
TIE_BREAK = (SentimentLabel.POSITIVE, SentimentLabel.NEGATIVE, SentimentLabel.NEUTRAL)


def parse_label(value) -> SentimentLabel:
    if isinstance(value, SentimentLabel):
        return value
    try:
        return SentimentLabel(str(value).strip().lower())
    except ValueError:
        raise ValueError(f"unknown sentiment label {value!r}") from None


@dataclass(frozen=True)
class LabeledSample:
    """A text with exactly three independent votes."""

    text: str
    votes: tuple[SentimentLabel, SentimentLabel, SentimentLabel]

    def __post_init__(self):
        if len(self.votes) != 3:
            raise ValueError(f"expected exactly 3 votes, got {len(self.votes)}")


@dataclass(frozen=True)
class PolaritySummary:
    positive: int
    negative: int
    neutral: int
    subjectivity: float | None
    pn_ratio: float | None


def default_stopwords() -> frozenset[str]:
    """The 50-word English stop list shipped with the package."""
    text = resources.files("buzzcast.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(w for w in text.split() if w)


def preprocess(
    text: str,
    topic: TopicSpec | Sequence[TopicSpec] | None = None,
    stopwords: frozenset[str] | None = None,
) -> str:
    """Normalize a tweet into the token string the classifier consumes.

    In order: lowercase/NFC, topic keywords -> MOV, drop URLs and @user-ids,
    ! -> EX and ? -> QM, strip remaining non-alphanumerics, drop stop-words,
    collapse whitespace. ``topic`` may be a single spec or a sequence (for
    texts whose topic is unknown, e.g. labeled training samples).
    """
    if stopwords is None:
        stopwords = _cached_stopwords()
    out = unicodedata.normalize("NFC", text).lower()
    if topic is not None:
        # Reuse the corpus matching rules so "title" and "match" agree.
        from .corpus import _keyword_pattern

        topics = [topic] if isinstance(topic, TopicSpec) else list(topic)
        for spec in topics:
            for keyword in spec.keywords:
                out = _keyword_pattern(keyword).sub(" MOV ", out)
    out = _URL_RE.sub(" ", out)
    out = _USER_RE.sub(" ", out)
    out = out.replace("!", " EX ").replace("?", " QM ")
    out = _NON_ALNUM_RE.sub("", out)
    tokens = [t for t in out.split() if t not in stopwords]
    return " ".join(tokens)


_STOPWORDS_CACHE: frozenset[str] | None = None


def _cached_stopwords() -> frozenset[str]:
    global _STOPWORDS_CACHE
    if _STOPWORDS_CACHE is None:
        _STOPWORDS_CACHE = default_stopwords()
    return _STOPWORDS_CACHE


def filter_unanimous(
    samples: Iterable[LabeledSample],
) -> list[tuple[str, SentimentLabel]]:
    """Keep only samples whose three votes agree; order preserved."""
    kept = []
    for sample in samples:
        first = sample.votes[0]
        if all(v == first for v in sample.votes[1:]):
            kept.append((sample.text, first))
    return kept


def load_labeled_jsonl(path) -> list[LabeledSample]:
    """Read labeled samples: one {"text", "votes": [3 labels]} object per line."""
    samples = []
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, start=1):
                stripped = line.strip()
                if not stripped:
                    continue
                try:
                    record = json.loads(stripped)
                    votes = tuple(parse_label(v) for v in record["votes"])
                    samples.append(LabeledSample(text=str(record["text"]), votes=votes))
                except (KeyError, TypeError, ValueError) as exc:
                    raise DataError(
                        f"bad labeled sample at {str(path)!r} line {line_no}: {exc}"
                    ) from exc
    except OSError as exc:
        raise DataError(f"cannot read labels file {str(path)!r}: {exc}") from exc
    return samples


def _strip_sentinels(text: str) -> str:
    return text.replace(START, "").replace(END, "")


class SentimentClassifier(BaseEstimator):
    """Per-category character n-gram language models with a category prior.

    Parameters
    ----------
    order: int
        Maximum character context length + 1 (the n in n-gram). Default 8.

    Attributes after fit
    --------------------
    classes_: tuple of SentimentLabel
    prior_: dict label -> add-one-smoothed category probability
    vocabulary_: frozenset of characters observed in training texts
    """

    def __init__(self, order: int = 8):
        self.order = order

    def fit(self, X: Sequence[str], y: Sequence) -> "SentimentClassifier":
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        texts = [_strip_sentinels(t) for t in X]
        labels = [parse_label(v) for v in y]
        if len(texts) != len(labels):
            raise ValueError(
                f"got {len(texts)} texts but {len(labels)} labels"
            )
        by_class = Counter(labels)
        missing = [c.value for c in TIE_BREAK if by_class[c] == 0]
        if missing:
            raise DataError(
                "every category needs at least one training sample; "
                f"empty: {', '.join(missing)}"
            )

        self.classes_ = TIE_BREAK
        total = len(labels)
        self.prior_ = {c: (by_class[c] + 1) / (total + 3) for c in TIE_BREAK}
        self.vocabulary_ = frozenset("".join(texts))

        self._counts: dict[SentimentLabel, dict[str, int]] = {c: {} for c in TIE_BREAK}
        pad = START * (self.order - 1)
        for text, label in zip(texts, labels):
            framed = pad + text + END
            counts = self._counts[label]
            for k in range(1, self.order + 1):
                for i in range(len(framed) - k + 1):
                    gram = framed[i : i + k]
                    counts[gram] = counts.get(gram, 0) + 1
        self._build_continuations()
        return self

    def _build_continuations(self) -> None:
        # Continuation totals over predictable symbols only (text chars + END);
        # grams ending in the start sentinel are contexts, never outcomes.
        self._cont_total = {}
        self._cont_distinct = {}
        for label, counts in self._counts.items():
            total: dict[str, int] = {}
            distinct: dict[str, int] = {}
            for gram, count in counts.items():
                if gram[-1] == START:
                    continue
                ctx = gram[:-1]
                total[ctx] = total.get(ctx, 0) + count
                distinct[ctx] = distinct.get(ctx, 0) + 1
            self._cont_total[label] = total
            self._cont_distinct[label] = distinct
        self._prob_cache: dict[SentimentLabel, dict[tuple[str, str], float]] = {
            c: {} for c in TIE_BREAK
        }

    def _check_fitted(self) -> None:
        if not hasattr(self, "prior_"):
            raise ValueError("classifier is not fitted; call fit() first")

    def next_char_prob(self, label: SentimentLabel, context: str, symbol: str) -> float:
        """Witten-Bell interpolated P(symbol | context) under one category.

        ``context`` is at most order-1 characters (longer contexts are
        truncated on the left); ``symbol`` is a single character or END.
        """
        self._check_fitted()
        if len(context) > self.order - 1:
            context = context[-(self.order - 1) :] if self.order > 1 else ""
        cached = self._prob_cache[label].get((context, symbol))
        if cached is not None:
            return cached
        counts = self._counts[label]
        cont_total = self._cont_total[label]
        cont_distinct = self._cont_distinct[label]
        prob = 1.0 / (len(self.vocabulary_) + 1)
        for j in range(len(context) + 1):
            ctx = context[len(context) - j :] if j else ""
            distinct = cont_distinct.get(ctx, 0)
            if distinct == 0:
                # Unseen context: nothing observed, keep the backed-off value.
                continue
            seen = counts.get(ctx + symbol, 0)
            prob = (seen + distinct * prob) / (cont_total[ctx] + distinct)
        self._prob_cache[label][(context, symbol)] = prob
        return prob

    def next_char_distribution(self, label: SentimentLabel, context: str) -> dict[str, float]:
        """Full next-symbol distribution over vocabulary + END for one context."""
        self._check_fitted()
        symbols = sorted(self.vocabulary_) + [END]
        return {s: self.next_char_prob(label, context, s) for s in symbols}

    def log_scores(self, text: str) -> dict[SentimentLabel, float]:
        """Per-category log prior + log character-sequence likelihood."""
        self._check_fitted()
        text = _strip_sentinels(text)
        padded = START * (self.order - 1) + text
        scores = {}
        for label in self.classes_:
            total = math.log(self.prior_[label])
            for i, symbol in enumerate(text):
                context = padded[i : i + self.order - 1] if self.order > 1 else ""
                total += math.log(self.next_char_prob(label, context, symbol))
            scores[label] = total
        return scores

    def predict_one(self, text: str) -> tuple[SentimentLabel, dict[SentimentLabel, float]]:
        scores = self.log_scores(text)
        best = self.classes_[0]
        for label in self.classes_[1:]:
            if scores[label] > scores[best]:
                best = label
        return best, scores

    def predict(self, X: Sequence[str]) -> list[SentimentLabel]:
        # Deduplicate: templated corpora repeat texts heavily.
        unique: dict[str, SentimentLabel] = {}
        out = []
        for text in X:
            if text not in unique:
                unique[text] = self.predict_one(text)[0]
            out.append(unique[text])
        return out

    def save(self, path) -> None:
        """Serialize counts + prior + order + vocabulary to versioned JSON."""
        self._check_fitted()
        payload = {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "order": self.order,
            "prior": {c.value: self.prior_[c] for c in self.classes_},
            "vocabulary": "".join(sorted(self.vocabulary_)),
            "counts": {
                c.value: dict(sorted(self._counts[c].items())) for c in self.classes_
            },
        }
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, sort_keys=True, separators=(",", ":"))
            handle.write("\n")

    @classmethod
    def load(cls, path) -> "SentimentClassifier":
        try:
            with open(path, "r", encoding="utf-8") as handle:
                payload = json.load(handle)
        except OSError as exc:
            raise DataError(f"cannot read model file {str(path)!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise DataError(f"model file {str(path)!r} is not valid JSON: {exc}") from exc
        if payload.get("format") != MODEL_FORMAT or payload.get("version") != MODEL_VERSION:
            raise DataError(
                f"model file {str(path)!r} has unsupported format/version "
                f"{payload.get('format')!r}/{payload.get('version')!r}"
            )
        model = cls(order=int(payload["order"]))
        model.classes_ = TIE_BREAK
        model.prior_ = {c: float(payload["prior"][c.value]) for c in TIE_BREAK}
        model.vocabulary_ = frozenset(payload["vocabulary"])
        model._counts = {
            c: {g: int(n) for g, n in payload["counts"][c.value].items()}
            for c in TIE_BREAK
        }
        model._build_continuations()
        return model


def cross_validate(
    texts: Sequence[str],
    labels: Sequence,
    order: int = 8,
    folds: int = 5,
    seed: int = 0,
) -> float:
    """Stratified k-fold accuracy of the classifier; deterministic per seed."""
    if folds < 2:
        raise ValueError(f"need at least 2 folds, got {folds}")
    if len(texts) < folds:
        raise ValueError(f"need at least {folds} samples for {folds} folds, got {len(texts)}")
    parsed = [parse_label(v) for v in labels]
    by_class: dict[SentimentLabel, list[int]] = {}
    for i, label in enumerate(parsed):
        by_class.setdefault(label, []).append(i)
    for label, members in by_class.items():
        if len(members) < folds:
            raise ValueError(
                f"class {label.value!r} has {len(members)} samples, fewer than {folds} folds"
            )
    rng = random.Random(seed)
    fold_of = [0] * len(texts)
    for members in by_class.values():
        shuffled = members[:]
        rng.shuffle(shuffled)
        for pos, idx in enumerate(shuffled):
            fold_of[idx] = pos % folds

    correct = 0
    for fold in range(folds):
        train_idx = [i for i in range(len(texts)) if fold_of[i] != fold]
        test_idx = [i for i in range(len(texts)) if fold_of[i] == fold]
        model = SentimentClassifier(order=order).fit(
            [texts[i] for i in train_idx], [parsed[i] for i in train_idx]
        )
        predictions = model.predict([texts[i] for i in test_idx])
        correct += sum(1 for i, pred in zip(test_idx, predictions) if pred == parsed[i])
    return correct / len(texts)


def polarity_summary(labels: Iterable[SentimentLabel]) -> PolaritySummary:
    """Subjectivity ((pos+neg)/neu) and PNratio (pos/neg); None when the
    denominator is zero."""
    counts = Counter(parse_label(v) for v in labels)
    pos = counts[SentimentLabel.POSITIVE]
    neg = counts[SentimentLabel.NEGATIVE]
    neu = counts[SentimentLabel.NEUTRAL]
    subjectivity = (pos + neg) / neu if neu > 0 else None
    pn_ratio = pos / neg if neg > 0 else None
    return PolaritySummary(
        positive=pos, negative=neg, neutral=neu,
        subjectivity=subjectivity, pn_ratio=pn_ratio,
    )
