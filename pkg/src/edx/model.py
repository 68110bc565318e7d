"""Span-annotated corpus model shared by every other module.

A corpus is a set of documents; each document is a list of tokenized
sentences plus a list of trigger mentions. A mention covers a half-open
token span [start, end) of one sentence and carries either an event-type
name or the negative label. All values are treated as immutable after
construction, so they are safe to share across concurrent readers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from edx.errors import InvalidArgument

# Canonical label token for annotated non-triggers. This is the spelling
# used in data files, index keys, and API parameters; NEGATIVE_TYPE below
# carries the human-readable name.
NEGATIVE_LABEL = "NEGATIVE"

_WS_RUN = re.compile(r"\s+")


@dataclass(frozen=True)
class EventType:
    """A declared event type. type_id 0 is reserved for the negative sentinel."""

    type_id: int
    name: str


NEGATIVE_TYPE = EventType(type_id=0, name="Negative Trigger")

# Neither reserved spelling may be declared as a corpus event type.
RESERVED_TYPE_NAMES = (NEGATIVE_LABEL, NEGATIVE_TYPE.name)


@dataclass(frozen=True)
class Sentence:
    doc_id: str
    sent_idx: int
    tokens: list[str]


@dataclass(frozen=True)
class Mention:
    """One trigger span. label is an event-type name or NEGATIVE_LABEL."""

    mention_id: str
    doc_id: str
    sent_idx: int
    start: int
    end: int
    surface: str
    normalized: str
    label: str

    @property
    def is_negative(self) -> bool:
        return self.label == NEGATIVE_LABEL


@dataclass(frozen=True)
class Document:
    doc_id: str
    title: str
    topic: str | None
    sentences: list[Sentence]
    mentions: list[Mention]


@dataclass(frozen=True)
class Corpus:
    name: str
    domain: str
    event_types: list[EventType]
    documents: list[Document]

    def type_names(self) -> set[str]:
        return {t.name for t in self.event_types}


@dataclass(frozen=True)
class Violation:
    """One invariant violation found by validate()."""

    code: str
    message: str
    doc_id: str | None = None
    mention_id: str | None = None


def normalize_trigger(surface: str) -> str:
    """Canonical trigger form: lowercased, whitespace runs collapsed.

    Deliberately no stemming or lemmatization; inflected forms are
    distinct triggers.
    """
    if not surface:
        raise InvalidArgument("trigger surface must be a non-empty string")
    normalized = _WS_RUN.sub(" ", surface.strip()).lower()
    if not normalized:
        raise InvalidArgument("trigger surface is whitespace only")
    return normalized


def make_mention(mention_id, doc_id, sent_idx, start, end, tokens, label) -> Mention:
    """Build a Mention whose surface/normalized fields derive from tokens."""
    surface = " ".join(tokens[start:end])
    return Mention(
        mention_id=mention_id,
        doc_id=doc_id,
        sent_idx=sent_idx,
        start=start,
        end=end,
        surface=surface,
        normalized=normalize_trigger(surface),
        label=label,
    )


def validate(corpus: Corpus) -> list[Violation]:
    """Check every corpus invariant; returns all violations found.

    Violations are data, not exceptions: an empty list means the corpus is
    valid and every downstream operation will accept it.
    """
    out: list[Violation] = []
    seen_type_ids: set[int] = set()
    seen_type_names: set[str] = set()
    for etype in corpus.event_types:
        if etype.type_id < 1:
            out.append(Violation("type-id-range", f"event type {etype.name!r} has type_id {etype.type_id} < 1"))
        if etype.type_id in seen_type_ids:
            out.append(Violation("duplicate-type-id", f"type_id {etype.type_id} declared more than once"))
        seen_type_ids.add(etype.type_id)
        if not etype.name:
            out.append(Violation("empty-type-name", f"event type {etype.type_id} has an empty name"))
        elif etype.name in RESERVED_TYPE_NAMES:
            out.append(Violation("reserved-type-name", f"event type name {etype.name!r} is reserved for negative triggers"))
        if etype.name in seen_type_names:
            out.append(Violation("duplicate-type-name", f"event type name {etype.name!r} declared more than once"))
        seen_type_names.add(etype.name)

    declared = corpus.type_names()
    seen_doc_ids: set[str] = set()
    seen_mention_ids: set[str] = set()
    for doc in corpus.documents:
        if doc.doc_id in seen_doc_ids:
            out.append(Violation("duplicate-doc-id", f"doc_id {doc.doc_id!r} appears more than once", doc_id=doc.doc_id))
        seen_doc_ids.add(doc.doc_id)

        for i, sent in enumerate(doc.sentences):
            if sent.sent_idx != i:
                out.append(Violation(
                    "noncontiguous-sent-idx",
                    f"sentence at position {i} has sent_idx {sent.sent_idx}; indices must run 0..n-1",
                    doc_id=doc.doc_id,
                ))
            if sent.doc_id != doc.doc_id:
                out.append(Violation("sentence-doc-mismatch", f"sentence {i} carries doc_id {sent.doc_id!r}", doc_id=doc.doc_id))
            if not sent.tokens or any(not tok for tok in sent.tokens):
                out.append(Violation("empty-tokens", f"sentence {i} has no tokens or an empty token", doc_id=doc.doc_id))

        seen_spans: set[tuple[int, int, int, str]] = set()
        for m in doc.mentions:
            ctx = dict(doc_id=doc.doc_id, mention_id=m.mention_id)
            if m.mention_id in seen_mention_ids:
                out.append(Violation("duplicate-mention-id", f"mention_id {m.mention_id!r} appears more than once", **ctx))
            seen_mention_ids.add(m.mention_id)
            if m.doc_id != doc.doc_id:
                out.append(Violation("mention-doc-mismatch", f"mention carries doc_id {m.doc_id!r}", **ctx))
            if not 0 <= m.sent_idx < len(doc.sentences):
                out.append(Violation("unknown-sentence", f"mention references sentence {m.sent_idx} of {len(doc.sentences)}", **ctx))
                continue
            tokens = doc.sentences[m.sent_idx].tokens
            if m.start >= m.end:
                out.append(Violation("span-ordering", f"span start {m.start} >= end {m.end}", **ctx))
                continue
            if m.start < 0 or m.end > len(tokens):
                out.append(Violation("span-out-of-range", f"span [{m.start},{m.end}) outside sentence of {len(tokens)} tokens", **ctx))
                continue
            surface = " ".join(tokens[m.start:m.end])
            if m.surface != surface:
                out.append(Violation("surface-mismatch", f"surface {m.surface!r} != tokens {surface!r}", **ctx))
            elif m.normalized != normalize_trigger(surface):
                out.append(Violation("normalized-mismatch", f"normalized {m.normalized!r} != {normalize_trigger(surface)!r}", **ctx))
            if m.label != NEGATIVE_LABEL and m.label not in declared:
                out.append(Violation("unknown-event-type", f"label {m.label!r} is not a declared event type", **ctx))
            key = (m.sent_idx, m.start, m.end, m.label)
            if key in seen_spans:
                out.append(Violation("duplicate-mention", f"second mention with span [{m.start},{m.end}) and label {m.label!r} in sentence {m.sent_idx}", **ctx))
            seen_spans.add(key)
    return out
