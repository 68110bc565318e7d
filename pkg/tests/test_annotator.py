"""Lexicon training, annotation, scoring, and model persistence."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from edx.annotator import (
    Thresholds,
    annotate,
    evaluate,
    load_model,
    save_model,
    split_sentences,
    tokenize,
    train_lexicon,
    with_thresholds,
)
from edx.errors import FormatMismatch, InvalidArgument
from edx.index import build_index
from tests import oracles
from tests.helpers import VOCAB, corpus_from_rows, random_corpus, random_rows, table2_corpus


@pytest.fixture(scope="module")
def table2_model():
    return train_lexicon(build_index(table2_corpus()))


def entries_view(model):
    return {t: (dict(e.per_event_counts), e.negative_count) for t, e in model.entries.items()}


class TestTrain:
    def test_table2_has_three_entries(self, table2_model):
        assert sorted(table2_model.entries) == ["crash", "damage", "storm"]
        assert table2_model.max_trigger_tokens == 1
        assert table2_model.source == "table2"

    def test_negative_only_index_rejected(self):
        index = build_index(corpus_from_rows({"w1": ({}, 5)}))
        with pytest.raises(InvalidArgument):
            train_lexicon(index)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_entry_count_equals_positive_triggers(self, seed):
        corpus = corpus_from_rows(random_rows(random.Random(seed)))
        index = build_index(corpus)
        if index.totals.positive_triggers == 0:
            with pytest.raises(InvalidArgument):
                train_lexicon(index)
            return
        model = train_lexicon(index)
        assert len(model.entries) == index.totals.positive_triggers
        assert all(e.per_event_counts for e in model.entries.values())

    def test_multi_token_trigger_sets_width(self):
        model = train_lexicon(build_index(corpus_from_rows({"set up": ({"Founding": 2}, 0), "won": ({"Victory": 1}, 0)})))
        assert model.max_trigger_tokens == 2


class TestTokenization:
    def test_sentence_split_on_terminal_punctuation(self):
        text = "The storm hits New York. People flee! Is it over? Yes."
        assert split_sentences(text) == [
            "The storm hits New York.", "People flee!", "Is it over?", "Yes.",
        ]

    def test_tokens_separate_punctuation(self):
        assert tokenize("The storm hits New York.") == ["The", "storm", "hits", "New", "York", "."]

    def test_internal_apostrophe_kept(self):
        assert tokenize("It doesn't matter") == ["It", "doesn't", "matter"]


class TestAnnotate:
    def test_higher_tau_neg_abstains_on_storm(self, table2_model):
        model = with_thresholds(table2_model, tau_neg=0.6)
        result = annotate(model, "The storm hits New York.")
        assert result.sentences[0].spans == []

    def test_default_tau_neg_predicts_catastrophe(self, table2_model):
        result = annotate(table2_model, "The storm hits New York.")
        (span,) = result.sentences[0].spans
        assert span.event == "Catastrophe"
        assert abs(span.confidence - 925 / 947) < 1e-9
        assert (span.start, span.end) == (1, 2)

    def test_empty_text(self, table2_model):
        assert annotate(table2_model, "").sentences == []
        assert annotate(table2_model, "   \n ").sentences == []

    def test_longest_leftmost_wins(self):
        rows = {"set": ({"Placing": 10}, 0), "set up": ({"Founding": 10}, 0), "up": ({"Motion": 10}, 0)}
        model = train_lexicon(build_index(corpus_from_rows(rows)))
        (sentence,) = annotate(model, "They set up camp.").sentences
        (span,) = sentence.spans
        assert (span.start, span.end, span.event) == (1, 3, "Founding")

    def test_blocked_longest_match_does_not_consume(self):
        # "set up" fails tau_neg; the scan resumes at "up", which succeeds.
        rows = {"set up": ({"Founding": 1}, 10), "up": ({"Motion": 10}, 0)}
        model = train_lexicon(build_index(corpus_from_rows(rows)))
        (sentence,) = annotate(model, "They set up camp.").sentences
        (span,) = sentence.spans
        assert (span.start, span.end, span.event) == (2, 3, "Motion")

    def test_spans_never_overlap(self, table2_model):
        text = "storm storm damage crash storm. It was a storm of storms."
        for sentence in annotate(table2_model, text).sentences:
            spans = sorted(sentence.spans, key=lambda s: s.start)
            for left, right in zip(spans, spans[1:]):
                assert left.end <= right.start

    def test_case_insensitive_matching(self, table2_model):
        (sentence,) = annotate(table2_model, "STORM warnings everywhere.").sentences
        assert sentence.spans and sentence.spans[0].trigger == "storm"

    def test_determinism(self, table2_model):
        text = "A storm damaged the crash site."
        assert annotate(table2_model, text) == annotate(table2_model, text)

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1),
           lo=st.floats(0, 1), hi=st.floats(0, 1))
    def test_threshold_monotonicity(self, seed, lo, hi):
        rng = random.Random(seed)
        rows = random_rows(rng)
        if not any(events for events, _ in rows.values()):
            return
        base = train_lexicon(build_index(corpus_from_rows(rows)))
        tau_lo, tau_hi = min(lo, hi), max(lo, hi)
        words = [w for t in rows for w in t.split(" ")] + VOCAB
        text = " ".join(rng.choice(words) for _ in range(12)) + "."
        for axis in ("tau_neg", "tau_event"):
            low = annotate(with_thresholds(base, **{axis: tau_lo}), text)
            high = annotate(with_thresholds(base, **{axis: tau_hi}), text)
            spans_low = {(s.start, s.end, s.event) for sent in low.sentences for s in sent.spans}
            spans_high = {(s.start, s.end, s.event) for sent in high.sentences for s in sent.spans}
            assert spans_high <= spans_low

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_predicted_event_is_argmax(self, seed):
        rng = random.Random(seed)
        rows = random_rows(rng)
        if not any(events for events, _ in rows.values()):
            return
        model = with_thresholds(train_lexicon(build_index(corpus_from_rows(rows))), tau_neg=0.0, tau_event=0.0)
        text = " ".join(rng.choice(list(rows)) for _ in range(8)) + "."
        for sentence in annotate(model, text).sentences:
            for span in sentence.spans:
                counts = model.entries[span.trigger].per_event_counts
                best = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[0]
                assert span.event == best[0]

    def test_confidence_in_unit_interval(self, table2_model):
        for sentence in annotate(table2_model, "crash and storm and damage.").sentences:
            for span in sentence.spans:
                assert 0 < span.confidence <= 1


class TestEvaluate:
    def test_perfect_recall_on_dominant_event_fixture(self):
        corpus = corpus_from_rows({"won": ({"Victory": 30}, 5)})
        model = with_thresholds(train_lexicon(build_index(corpus)), tau_neg=0.0)
        report = evaluate(model, corpus)
        assert report.per_event["Victory"].recall == 1.0

    def test_degenerate_thresholds_zero_scores(self):
        corpus = corpus_from_rows({"w1": ({"A": 5, "B": 5}, 0)})
        model = with_thresholds(train_lexicon(build_index(corpus)), tau_event=0.999)
        report = evaluate(model, corpus)
        assert report.micro.precision == 0.0
        assert report.micro.recall == 0.0
        assert report.micro.f1 == 0.0

    def test_corpus_without_gold_mentions_rejected(self, table2_model):
        corpus = corpus_from_rows({"w1": ({}, 4)})
        with pytest.raises(InvalidArgument):
            evaluate(table2_model, corpus)

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_matches_brute_force(self, seed):
        rng = random.Random(seed)
        corpus = random_corpus(rng)
        if not any(not m.is_negative for d in corpus.documents for m in d.mentions):
            return
        index = build_index(corpus)
        tau_neg, tau_event = rng.choice([(0.0, 0.0), (0.5, 0.5), (0.3, 0.8)])
        model = train_lexicon(index, Thresholds(tau_neg=tau_neg, tau_event=tau_event))
        report = evaluate(model, corpus)
        per_event, micro = oracles.evaluate_scores(entries_view(model), tau_neg, tau_event, corpus)
        assert set(report.per_event) == set(per_event)
        for event, (p, r, f) in per_event.items():
            got = report.per_event[event]
            assert (got.precision, got.recall, got.f1) == (p, r, f)
        assert (report.micro.precision, report.micro.recall, report.micro.f1) == micro


class TestPersistence:
    def test_round_trip(self, table2_model, tmp_path):
        path = tmp_path / "model.json"
        save_model(table2_model, path)
        assert load_model(path) == table2_model

    def test_round_trip_preserves_thresholds(self, tmp_path):
        model = train_lexicon(build_index(table2_corpus()), Thresholds(tau_neg=0.35, tau_event=0.8))
        path = tmp_path / "model.json"
        save_model(model, path)
        back = load_model(path)
        assert back.thresholds == Thresholds(0.35, 0.8)
        assert back == model

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_round_trip_property(self, tmp_path_factory, seed):
        rng = random.Random(seed)
        rows = random_rows(rng)
        if not any(events for events, _ in rows.values()):
            return
        model = train_lexicon(build_index(corpus_from_rows(rows)))
        path = tmp_path_factory.mktemp("model") / "m.json"
        save_model(model, path)
        assert load_model(path) == model

    def test_garbage_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("42")
        with pytest.raises(FormatMismatch):
            load_model(path)

    def test_entries_without_positives_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"kind": "edx-lexicon", "schema_version": 1, "max_trigger_tokens": 1, '
                        '"thresholds": {"tau_neg": 0.5, "tau_event": 0.5}, '
                        '"entries": {"w": {"events": {}, "negative": 3}}}')
        with pytest.raises(FormatMismatch):
            load_model(path)
