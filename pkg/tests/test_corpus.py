import json
import re
import unicodedata
from datetime import datetime, timedelta, timezone

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from buzzcast.corpus import (
    CriticalPeriod,
    CorpusQualityError,
    DataError,
    TopicSpec,
    Tweet,
    extract_flags,
    load_corpus,
    load_topics,
    match_topic,
    parse_timestamp,
    window,
)

UTC = timezone.utc
RELEASE = datetime(2009, 12, 4, tzinfo=UTC)


def _write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps(r) + "\n")


def _record(i, ts="2009-12-01T10:00:00Z", text="some text"):
    return {"id": f"t{i}", "author": f"a{i}", "ts": ts, "text": text}


class TestLoadCorpus:
    def test_empty_file_is_empty_stream(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("")
        stream = load_corpus(path)
        assert list(stream) == []
        assert stream.malformed == 0

    def test_three_records_in_order_verbatim(self, tmp_path):
        records = [
            _record(0, ts="2009-12-01T10:00:00Z", text="first tweet"),
            _record(1, ts=1259661600, text="second tweet"),
            _record(2, ts="2009-12-01T12:00:00+00:00", text="third tweet"),
        ]
        path = tmp_path / "three.jsonl"
        _write_jsonl(path, records)
        tweets = list(load_corpus(path))
        assert [t.id for t in tweets] == ["t0", "t1", "t2"]
        assert [t.author for t in tweets] == ["a0", "a1", "a2"]
        assert [t.text for t in tweets] == ["first tweet", "second tweet", "third tweet"]
        assert tweets[0].timestamp == datetime(2009, 12, 1, 10, tzinfo=UTC)
        assert tweets[1].timestamp == datetime.fromtimestamp(1259661600, tz=UTC)
        assert tweets[2].timestamp == datetime(2009, 12, 1, 12, tzinfo=UTC)

    def test_missing_timestamp_counted_and_stream_continues(self, tmp_path):
        bad = {"id": "tbad", "author": "a", "text": "no ts"}
        records = [_record(i) for i in range(10)]
        records.insert(3, bad)
        path = tmp_path / "mixed.jsonl"
        _write_jsonl(path, records)
        stream = load_corpus(path)
        tweets = list(stream)
        assert len(tweets) == 10
        assert stream.malformed == 1
        assert any("ts" in e for e in stream.errors)

    def test_quality_abort_above_tolerance(self, tmp_path):
        records = [_record(i) for i in range(8)] + [{"id": f"b{i}"} for i in range(2)]
        path = tmp_path / "bad.jsonl"
        _write_jsonl(path, records)
        with pytest.raises(CorpusQualityError):
            list(load_corpus(path))

    def test_exactly_at_tolerance_passes(self, tmp_path):
        records = [_record(i) for i in range(9)] + [{"id": "b"}]
        path = tmp_path / "edge.jsonl"
        _write_jsonl(path, records)
        stream = load_corpus(path)
        assert len(list(stream)) == 9
        assert stream.malformed == 1

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(DataError):
            load_corpus(tmp_path / "nope.jsonl")

    @pytest.mark.parametrize(
        "mutate",
        [
            lambda r: r.update(text=""),
            lambda r: r.update(text="x" * 561),
            lambda r: r.update(id=""),
            lambda r: r.update(ts="not-a-date"),
        ],
    )
    def test_malformed_variants(self, tmp_path, mutate):
        bad = _record(99)
        mutate(bad)
        path = tmp_path / "one.jsonl"
        _write_jsonl(path, [_record(i) for i in range(9)] + [bad])
        stream = load_corpus(path)
        assert len(list(stream)) == 9
        assert stream.malformed == 1

    def test_duplicate_id_is_malformed(self, tmp_path):
        records = [_record(i) for i in range(9)] + [_record(0)]
        path = tmp_path / "dup.jsonl"
        _write_jsonl(path, records)
        stream = load_corpus(path)
        assert len(list(stream)) == 9
        assert stream.malformed == 1

    def test_560_byte_text_accepted(self, tmp_path):
        path = tmp_path / "cap.jsonl"
        _write_jsonl(path, [_record(0, text="x" * 560)])
        assert len(list(load_corpus(path))) == 1


class TestParseTimestamp:
    def test_epoch_seconds(self):
        assert parse_timestamp(0) == datetime(1970, 1, 1, tzinfo=UTC)

    def test_naive_iso_assumed_utc(self):
        assert parse_timestamp("2009-12-04T08:30:00") == datetime(
            2009, 12, 4, 8, 30, tzinfo=UTC
        )

    def test_offset_converted_to_utc(self):
        assert parse_timestamp("2009-12-04T08:30:00+02:00") == datetime(
            2009, 12, 4, 6, 30, tzinfo=UTC
        )

    @pytest.mark.parametrize("bad", ["yesterday", "", None, 1.5, True])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_timestamp(bad)


def _tweet(text, ts=RELEASE):
    return Tweet(id="x", author="a", timestamp=ts, text=text)


def _topic(*keywords):
    return TopicSpec(name=keywords[0], keywords=tuple(keywords), release=RELEASE)


class TestMatchTopic:
    def test_single_word_on_boundary(self):
        assert match_topic(_tweet("Watched Avatar tonight"), _topic("avatar"))

    def test_single_word_rejects_inner_match(self):
        assert not match_topic(_tweet("avatars are cool"), _topic("avatar"))

    def test_phrase_match_with_oracle(self):
        texts = [
            "the book of eli rocks",
            "book   of eli was fine",
            "booking of eli",
            "the book of elias",
            "no match here",
        ]
        oracle = re.compile(r"book\s+of\s+eli")
        for text in texts:
            expected = oracle.search(text.lower()) is not None
            assert match_topic(_tweet(text), _topic("book of eli")) == expected, text

    def test_case_insensitive(self):
        assert match_topic(_tweet("AVATAR!!"), _topic("avatar"))

    def test_nfc_equivalence(self):
        # e + combining acute vs precomposed e-acute
        decomposed = "saw léon today"
        composed = unicodedata.normalize("NFC", decomposed)
        topic = _topic("léon")
        assert match_topic(_tweet(decomposed), topic)
        assert match_topic(_tweet(composed), topic)

    def test_any_keyword_suffices(self):
        topic = _topic("new moon", "twilight")
        assert match_topic(_tweet("team twilight forever"), topic)


class TestWindow:
    def test_release_instant_goes_to_week1(self):
        period = CriticalPeriod.for_release(RELEASE)
        part = window([_tweet("x", RELEASE)], period)
        assert [len(w) for w in (part.week0, part.week1, part.week2)] == [0, 1, 0]

    def test_one_second_before_release_is_week0(self):
        period = CriticalPeriod.for_release(RELEASE)
        part = window([_tweet("x", RELEASE - timedelta(seconds=1))], period)
        assert len(part.week0) == 1

    def test_uniform_tweets_partition_sizes(self):
        period = CriticalPeriod.for_release(RELEASE)
        spacing = timedelta(days=21) / 100
        tweets = [
            Tweet(id=f"u{i}", author="a", timestamp=period.start + i * spacing, text="t")
            for i in range(100)
        ]
        part = window(tweets, period)
        sizes = [len(part.week0), len(part.week1), len(part.week2)]
        assert sum(sizes) == 100
        for got, want in zip(sizes, (33, 33, 34)):
            assert abs(got - want) <= 1

    def test_outside_period_excluded(self):
        period = CriticalPeriod.for_release(RELEASE)
        before = _tweet("x", period.start - timedelta(seconds=1))
        at_end = _tweet("y", period.end)
        part = window([before, at_end], period)
        assert len(part.excluded) == 2

    @given(
        offsets=st.lists(
            st.integers(min_value=-10 * 86400, max_value=40 * 86400), max_size=80
        )
    )
    @settings(max_examples=60, deadline=None)
    def test_partition_completeness(self, offsets):
        period = CriticalPeriod.for_release(RELEASE)
        tweets = [
            Tweet(id=f"h{i}", author="a",
                  timestamp=period.start + timedelta(seconds=o), text="t")
            for i, o in enumerate(offsets)
        ]
        part = window(tweets, period)
        n = len(part.week0) + len(part.week1) + len(part.week2) + len(part.excluded)
        assert n == len(tweets)
        buckets = [part.week0, part.week1, part.week2, part.excluded]
        seen = {t.id for b in buckets for t in b}
        assert len(seen) == len(tweets)


class TestCriticalPeriod:
    def test_for_release_spans_21_days(self):
        period = CriticalPeriod.for_release(RELEASE)
        assert period.end - period.start == timedelta(days=21)
        assert period.start < period.release < period.end

    def test_rejects_wrong_span(self):
        with pytest.raises(ValueError):
            CriticalPeriod(start=RELEASE, end=RELEASE + timedelta(days=20),
                           release=RELEASE + timedelta(days=7))


class TestExtractFlags:
    def test_retweet_with_url_and_mention(self):
        flags = extract_flags(_tweet("RT @bob great movie http://x.co"))
        assert flags.has_url and flags.is_retweet
        assert flags.mentions == ("bob",)

    def test_plain_text(self):
        flags = extract_flags(_tweet("loved it!!"))
        assert flags == type(flags)(False, False, ())

    def test_bare_at_is_not_a_mention(self):
        flags = extract_flags(_tweet("cart @ the store"))
        assert not flags.has_url and not flags.is_retweet
        assert flags.mentions == ()

    def test_mid_text_rt(self):
        assert extract_flags(_tweet("so true rt @ann loved it")).is_retweet

    def test_rt_inside_word_is_not_retweet(self):
        assert not extract_flags(_tweet("alert @ann")).is_retweet

    def test_https_token(self):
        assert extract_flags(_tweet("see https://example.com/x")).has_url

    def test_url_must_start_token(self):
        assert not extract_flags(_tweet("weirdhttp://x.co glued")).has_url

    @given(st.text(max_size=100))
    @settings(max_examples=100, deadline=None)
    def test_pure_function(self, text):
        t1 = Tweet(id="a", author="u", timestamp=RELEASE, text=text or "x")
        t2 = Tweet(id="b", author="v", timestamp=RELEASE, text=text or "x")
        assert extract_flags(t1) == extract_flags(t2)


class TestLoadTopics:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "topics.json"
        path.write_text(
            json.dumps(
                [
                    {
                        "name": "avatar",
                        "keywords": ["avatar"],
                        "release": "2009-12-18T00:00:00Z",
                        "theater_count": 3456,
                        "external_series": {"hsx": [1.0, 2.0]},
                    }
                ]
            )
        )
        topics = load_topics(path)
        assert topics[0].name == "avatar"
        assert topics[0].theater_count == 3456
        assert topics[0].external_series == {"hsx": (1.0, 2.0)}

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError, match="nope"):
            load_topics(tmp_path / "nope.json")

    def test_empty_keywords_rejected(self, tmp_path):
        path = tmp_path / "topics.json"
        path.write_text(json.dumps([{"name": "x", "keywords": [],
                                     "release": "2009-12-18T00:00:00Z"}]))
        with pytest.raises(DataError):
            load_topics(path)
