"""Immutable inverted indices over a corpus, plus the explorer queries.

build_index() materializes two maps in one pass: normalized trigger ->
per-event instance counts with instance references, and event -> trigger
distribution. Both are read-only after construction, so query functions
are safe under unbounded concurrent readers.

A snapshot file persists the corpus; the index is rebuilt on load (the
build is pure, so load(save(index)) reproduces the index exactly while
keeping snapshots half the size).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from edx.errors import FormatMismatch, InvalidArgument, NotFound
from edx.ingest import _open_text, doc_from_record, doc_to_record
from edx.model import NEGATIVE_LABEL, Corpus, EventType, Mention, normalize_trigger, validate

SNAPSHOT_SCHEMA_VERSION = 1
SNAPSHOT_KIND = "edx-snapshot"

# (doc_id, sent_idx, mention_id) locating one instance of a trigger.
InstanceRef = tuple[str, int, str]


@dataclass
class TriggerEntry:
    """Everything the corpus says about one normalized trigger."""

    normalized: str
    per_event_counts: dict[str, int] = field(default_factory=dict)
    negative_count: int = 0
    instance_refs: dict[str, list[InstanceRef]] = field(default_factory=dict)

    @property
    def positive_count(self) -> int:
        return sum(self.per_event_counts.values())

    @property
    def total_count(self) -> int:
        return self.positive_count + self.negative_count


@dataclass
class EventEntry:
    event: EventType
    mention_count: int = 0
    trigger_counts: dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class IndexTotals:
    candidate_triggers: int
    positive_triggers: int
    annotated_instances: int
    negative_instances: int


@dataclass
class TriggerIndex:
    by_trigger: dict[str, TriggerEntry]
    by_event: dict[str, EventEntry]
    corpus_ref: str
    totals: IndexTotals


def build_index(corpus: Corpus) -> TriggerIndex:
    """One deterministic pass: every mention counts once under its trigger and label."""
    by_trigger: dict[str, TriggerEntry] = {}
    by_event: dict[str, EventEntry] = {t.name: EventEntry(event=t) for t in corpus.event_types}
    for doc in corpus.documents:
        for m in doc.mentions:
            entry = by_trigger.get(m.normalized)
            if entry is None:
                entry = by_trigger[m.normalized] = TriggerEntry(normalized=m.normalized)
            if m.is_negative:
                entry.negative_count += 1
            else:
                entry.per_event_counts[m.label] = entry.per_event_counts.get(m.label, 0) + 1
                ev = by_event[m.label]
                ev.mention_count += 1
                ev.trigger_counts[m.normalized] = ev.trigger_counts.get(m.normalized, 0) + 1
            entry.instance_refs.setdefault(m.label, []).append((m.doc_id, m.sent_idx, m.mention_id))
    annotated = sum(e.mention_count for e in by_event.values())
    negative = sum(e.negative_count for e in by_trigger.values())
    totals = IndexTotals(
        candidate_triggers=len(by_trigger),
        positive_triggers=sum(1 for e in by_trigger.values() if e.per_event_counts),
        annotated_instances=annotated,
        negative_instances=negative,
    )
    return TriggerIndex(by_trigger=by_trigger, by_event=by_event, corpus_ref=corpus.name, totals=totals)


def top_triggers(index: TriggerIndex, event: str, limit: int = 10) -> list[tuple[str, int]]:
    """Most frequent triggers of one event: count descending, ties lexicographic."""
    if event not in index.by_event:
        raise NotFound(f"unknown event type {event!r}")
    if limit < 1:
        raise InvalidArgument(f"limit must be >= 1, got {limit}")
    ranked = sorted(index.by_event[event].trigger_counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:limit]


@dataclass(frozen=True)
class RenderedSpan:
    start: int
    end: int
    label: str
    kind: str  # "positive" | "negative"
    is_focus: bool


@dataclass(frozen=True)
class RenderedInstance:
    doc_id: str
    sent_idx: int
    tokens: list[str]
    spans: list[RenderedSpan]


@dataclass(frozen=True)
class Page:
    items: list
    total: int
    page: int
    page_size: int


class CorpusLookup:
    """Mention and sentence lookup tables for instance rendering.

    Query functions build one per call when none is supplied; long-lived
    callers (the API service) construct it once next to the corpus.
    """

    def __init__(self, corpus: Corpus):
        self.corpus = corpus
        self.docs = {d.doc_id: d for d in corpus.documents}
        self.mention_by_id: dict[str, Mention] = {}
        self.by_sentence: dict[tuple[str, int], list[Mention]] = {}
        for doc in corpus.documents:
            for m in doc.mentions:
                self.mention_by_id[m.mention_id] = m
                self.by_sentence.setdefault((m.doc_id, m.sent_idx), []).append(m)

    def tokens(self, doc_id: str, sent_idx: int) -> list[str]:
        return self.docs[doc_id].sentences[sent_idx].tokens


def _mention_order(m: Mention):
    return (m.doc_id, m.sent_idx, m.start, m.end, m.label, m.mention_id)


def _render(lookup: CorpusLookup, focus: Mention) -> RenderedInstance:
    neighbours = sorted(lookup.by_sentence[(focus.doc_id, focus.sent_idx)], key=_mention_order)
    spans = [
        RenderedSpan(
            start=m.start,
            end=m.end,
            label=m.label,
            kind="negative" if m.is_negative else "positive",
            is_focus=m.mention_id == focus.mention_id,
        )
        for m in neighbours
    ]
    return RenderedInstance(
        doc_id=focus.doc_id,
        sent_idx=focus.sent_idx,
        tokens=lookup.tokens(focus.doc_id, focus.sent_idx),
        spans=spans,
    )


def _paged(mentions: list[Mention], lookup: CorpusLookup, page: int, page_size: int) -> Page:
    if page < 1:
        raise InvalidArgument(f"page must be >= 1, got {page}")
    if not 1 <= page_size <= 200:
        raise InvalidArgument(f"page_size must be in [1,200], got {page_size}")
    mentions = sorted(mentions, key=_mention_order)
    window = mentions[(page - 1) * page_size:page * page_size]
    return Page(items=[_render(lookup, m) for m in window], total=len(mentions), page=page, page_size=page_size)


def instances_for_event(index, corpus, event, page=1, page_size=20, lookup=None) -> Page:
    """All mention instances of one event, rendered with co-occurring spans."""
    if event not in index.by_event:
        raise NotFound(f"unknown event type {event!r}")
    lookup = lookup or CorpusLookup(corpus)
    mentions = []
    for trigger in index.by_event[event].trigger_counts:
        for ref in index.by_trigger[trigger].instance_refs.get(event, []):
            mentions.append(lookup.mention_by_id[ref[2]])
    return _paged(mentions, lookup, page, page_size)


def instances_for_trigger(index, corpus, trigger, event_filter=None, page=1, page_size=20, lookup=None) -> Page:
    """Instances of one trigger, across all its labels or filtered to one.

    event_filter accepts an event-type name or NEGATIVE_LABEL; None means
    every label the trigger carries.
    """
    key = normalize_trigger(trigger)
    entry = index.by_trigger.get(key)
    if entry is None:
        raise NotFound(f"unknown trigger {trigger!r}")
    if event_filter is None:
        labels = list(entry.instance_refs)
    elif event_filter == NEGATIVE_LABEL or event_filter in index.by_event:
        labels = [event_filter]
    else:
        raise NotFound(f"unknown event type {event_filter!r}")
    lookup = lookup or CorpusLookup(corpus)
    mentions = [lookup.mention_by_id[ref[2]] for label in labels for ref in entry.instance_refs.get(label, [])]
    return _paged(mentions, lookup, page, page_size)


def save_snapshot(corpus: Corpus, path) -> None:
    """Persist a corpus as a versioned, self-describing snapshot file."""
    obj = {
        "schema_version": SNAPSHOT_SCHEMA_VERSION,
        "kind": SNAPSHOT_KIND,
        "corpus": {
            "name": corpus.name,
            "domain": corpus.domain,
            "event_types": [{"id": t.type_id, "name": t.name} for t in corpus.event_types],
            "documents": [doc_to_record(d) for d in corpus.documents],
        },
    }
    with _open_text(path, "wt") as fh:
        json.dump(obj, fh, ensure_ascii=False, separators=(",", ":"))


def load_snapshot(path) -> tuple[Corpus, TriggerIndex]:
    """Read a snapshot and rebuild its index; inverse of save_snapshot."""
    with _open_text(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatMismatch(f"{path} is not a snapshot file: {exc}") from None
    if not isinstance(obj, dict) or obj.get("kind") != SNAPSHOT_KIND:
        raise FormatMismatch(f"{path} is not a snapshot file")
    if obj.get("schema_version") != SNAPSHOT_SCHEMA_VERSION:
        raise FormatMismatch(f"unsupported snapshot schema_version {obj.get('schema_version')!r}")
    raw = obj["corpus"]
    try:
        corpus = Corpus(
            name=raw["name"],
            domain=raw.get("domain", ""),
            event_types=[EventType(type_id=t["id"], name=t["name"]) for t in raw.get("event_types", [])],
            documents=[doc_from_record(rec) for rec in raw.get("documents", [])],
        )
    except (KeyError, TypeError) as exc:
        raise FormatMismatch(f"snapshot corpus is malformed: {exc}") from None
    violations = validate(corpus)
    if violations:
        raise FormatMismatch(f"snapshot corpus fails validation ({len(violations)} violations; first: {violations[0].message})")
    return corpus, build_index(corpus)
