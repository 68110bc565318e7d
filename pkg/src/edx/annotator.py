"""Lexicon-based trigger annotator trained from a trigger index.

The model is a frequency lexicon: for every positive trigger it stores
the per-event instance counts plus the negative count seen in the source
corpus. Annotation is greedy longest-leftmost matching over normalized
token windows; a match is emitted only when the trigger's positive share
clears tau_neg and its dominant-event confidence clears tau_event. The
predicted event is always the trigger's most frequent one, which makes
the label-imbalance failure mode of lexicon-style annotators directly
observable.

Models are immutable after training; annotate() is stateless and safe
for concurrent use.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from datetime import datetime, timezone

from edx.errors import FormatMismatch, InvalidArgument
from edx.index import TriggerIndex
from edx.ingest import _open_text
from edx.model import Corpus, normalize_trigger

MODEL_SCHEMA_VERSION = 1
MODEL_KIND = "edx-lexicon"

# Raw-text handling (never applied to ingested corpora, which keep their
# source tokenization): sentences end at terminal punctuation; tokens are
# word runs (keeping internal apostrophes) or single punctuation marks.
_SENT_SPLIT = re.compile(r"(?<=[.!?])\s+")
_TOKEN = re.compile(r"\w+'\w+|\w+|[^\w\s]")


@dataclass(frozen=True)
class Thresholds:
    tau_neg: float = 0.5
    tau_event: float = 0.5


@dataclass(frozen=True)
class LexiconEntry:
    per_event_counts: dict[str, int]
    negative_count: int

    @property
    def positive_count(self) -> int:
        return sum(self.per_event_counts.values())


@dataclass(frozen=True)
class LexiconModel:
    max_trigger_tokens: int
    entries: dict[str, LexiconEntry]
    thresholds: Thresholds
    source: str
    created_at: str


@dataclass(frozen=True)
class PredictedSpan:
    start: int
    end: int
    event: str
    confidence: float
    trigger: str


@dataclass(frozen=True)
class AnnotatedSentence:
    tokens: list[str]
    spans: list[PredictedSpan]


@dataclass(frozen=True)
class AnnotatedText:
    sentences: list[AnnotatedSentence]


def train_lexicon(index: TriggerIndex, thresholds: Thresholds = Thresholds()) -> LexiconModel:
    """Build a lexicon from every positive trigger in the index."""
    entries = {
        trigger: LexiconEntry(per_event_counts=dict(e.per_event_counts), negative_count=e.negative_count)
        for trigger, e in index.by_trigger.items()
        if e.per_event_counts
    }
    if not entries:
        raise InvalidArgument("index has no positive triggers; nothing to train on")
    return LexiconModel(
        max_trigger_tokens=max(len(t.split(" ")) for t in entries),
        entries=entries,
        thresholds=thresholds,
        source=index.corpus_ref,
        created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )


def with_thresholds(model: LexiconModel, tau_neg=None, tau_event=None) -> LexiconModel:
    """Copy of the model with one or both thresholds replaced."""
    current = model.thresholds
    return replace(model, thresholds=Thresholds(
        tau_neg=current.tau_neg if tau_neg is None else tau_neg,
        tau_event=current.tau_event if tau_event is None else tau_event,
    ))


def _decide(entry: LexiconEntry, thresholds: Thresholds):
    """Dominant event and confidence, or None when a threshold blocks emission."""
    ranked = sorted(entry.per_event_counts.items(), key=lambda kv: (-kv[1], kv[0]))
    event, top = ranked[0]
    confidence = top / entry.positive_count
    share = entry.positive_count / (entry.positive_count + entry.negative_count)
    if share >= thresholds.tau_neg and confidence >= thresholds.tau_event:
        return event, confidence
    return None


def predict_spans(model: LexiconModel, tokens: list[str]) -> list[PredictedSpan]:
    """Greedy longest-leftmost lexicon matching over one token sequence.

    At each position only the longest matching window is considered; when
    thresholds block it no span is emitted there and scanning resumes one
    token later, so emitted spans never overlap.
    """
    spans: list[PredictedSpan] = []
    i, n = 0, len(tokens)
    while i < n:
        advanced = False
        for width in range(min(model.max_trigger_tokens, n - i), 0, -1):
            try:
                key = normalize_trigger(" ".join(tokens[i:i + width]))
            except InvalidArgument:
                continue
            entry = model.entries.get(key)
            if entry is None:
                continue
            decision = _decide(entry, model.thresholds)
            if decision is not None:
                event, confidence = decision
                spans.append(PredictedSpan(start=i, end=i + width, event=event,
                                           confidence=confidence, trigger=key))
                i += width
                advanced = True
            break
        if not advanced:
            i += 1
    return spans


def split_sentences(text: str) -> list[str]:
    return [s for s in _SENT_SPLIT.split(text.strip()) if s]


def tokenize(sentence: str) -> list[str]:
    return _TOKEN.findall(sentence)


def annotate(model: LexiconModel, text: str) -> AnnotatedText:
    """Split raw text into sentences and tokens, then predict trigger spans."""
    sentences = []
    for raw in split_sentences(text or ""):
        tokens = tokenize(raw)
        if not tokens:
            continue
        sentences.append(AnnotatedSentence(tokens=tokens, spans=predict_spans(model, tokens)))
    return AnnotatedText(sentences=sentences)


@dataclass(frozen=True)
class Scores:
    precision: float
    recall: float
    f1: float
    tp: int
    fp: int
    fn: int


@dataclass(frozen=True)
class EvaluationReport:
    per_event: dict[str, Scores]
    micro: Scores


def _scores(tp: int, fp: int, fn: int) -> Scores:
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return Scores(precision=precision, recall=recall, f1=f1, tp=tp, fp=fp, fn=fn)


def evaluate(model: LexiconModel, corpus: Corpus) -> EvaluationReport:
    """Trigger-classification scoring against a gold-annotated corpus.

    A prediction is correct iff a gold mention with the identical sentence,
    span, and event exists. The matcher runs over the corpus's stored
    tokens; ingested text is never re-tokenized.
    """
    gold: set[tuple[str, int, int, int, str]] = set()
    for doc in corpus.documents:
        for m in doc.mentions:
            if not m.is_negative:
                gold.add((m.doc_id, m.sent_idx, m.start, m.end, m.label))
    if not gold:
        raise InvalidArgument("corpus has no gold event mentions to score against")

    predicted: set[tuple[str, int, int, int, str]] = set()
    for doc in corpus.documents:
        for sent in doc.sentences:
            for span in predict_spans(model, sent.tokens):
                predicted.add((doc.doc_id, sent.sent_idx, span.start, span.end, span.event))

    events = sorted({key[4] for key in gold} | {key[4] for key in predicted})
    per_event: dict[str, Scores] = {}
    tp_all = fp_all = fn_all = 0
    for event in events:
        pred_e = {k for k in predicted if k[4] == event}
        gold_e = {k for k in gold if k[4] == event}
        tp = len(pred_e & gold_e)
        fp = len(pred_e - gold_e)
        fn = len(gold_e - pred_e)
        per_event[event] = _scores(tp, fp, fn)
        tp_all, fp_all, fn_all = tp_all + tp, fp_all + fp, fn_all + fn
    return EvaluationReport(per_event=per_event, micro=_scores(tp_all, fp_all, fn_all))


def save_model(model: LexiconModel, path) -> None:
    obj = {
        "schema_version": MODEL_SCHEMA_VERSION,
        "kind": MODEL_KIND,
        "source": model.source,
        "created_at": model.created_at,
        "max_trigger_tokens": model.max_trigger_tokens,
        "thresholds": {"tau_neg": model.thresholds.tau_neg, "tau_event": model.thresholds.tau_event},
        "entries": {
            t: {"events": e.per_event_counts, "negative": e.negative_count}
            for t, e in model.entries.items()
        },
    }
    with _open_text(path, "wt") as fh:
        json.dump(obj, fh, ensure_ascii=False, separators=(",", ":"))


def load_model(path) -> LexiconModel:
    with _open_text(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatMismatch(f"{path} is not a lexicon model file: {exc}") from None
    if not isinstance(obj, dict) or obj.get("kind") != MODEL_KIND:
        raise FormatMismatch(f"{path} is not a lexicon model file")
    if obj.get("schema_version") != MODEL_SCHEMA_VERSION:
        raise FormatMismatch(f"unsupported model schema_version {obj.get('schema_version')!r}")
    entries = {
        t: LexiconEntry(per_event_counts=dict(raw["events"]), negative_count=raw["negative"])
        for t, raw in obj["entries"].items()
    }
    if not entries or any(not e.per_event_counts for e in entries.values()):
        raise FormatMismatch("lexicon entries must each carry at least one positive count")
    if obj["max_trigger_tokens"] != max(len(t.split(" ")) for t in entries):
        raise FormatMismatch("lexicon max_trigger_tokens disagrees with its entries")
    return LexiconModel(
        max_trigger_tokens=obj["max_trigger_tokens"],
        entries=entries,
        thresholds=Thresholds(**obj["thresholds"]),
        source=obj.get("source", ""),
        created_at=obj.get("created_at", ""),
    )
