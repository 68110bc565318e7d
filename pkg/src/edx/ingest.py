"""Dataset file adapters producing validated Corpus values.

Four formats are supported:

  maven    line-delimited JSON, one document per line, following the public
           MAVEN release layout: {id, title, content: [{sentence, tokens}],
           events: [{id, type, type_id, mention: [{id, trigger_word,
           sent_id, offset: [start, end)}]}], negative_triggers: [{id,
           trigger_word, sent_id, offset}]}. Test-split documents carry
           "candidates" instead of labels and are ingested with zero
           mentions (counted as unlabeled).
  rams     line-delimited JSON, one multi-sentence record per line with
           document-level inclusive token spans in evt_triggers. Each
           trigger becomes one positive mention; the format enumerates no
           negative triggers.
  aldg     line-delimited JSON, one single-sentence record per line:
           {id?, tokens | sentence, trigger, event_type, offset?: [start,
           end)}. When offset is absent the first token window matching
           the trigger anchors the span.
  unified  this package's own interchange format, see export_unified().

Malformed lines and malformed mention records are skipped and counted,
never silently dropped; more than 10% of either aborts with a
format-mismatch error naming the first offending record.
"""

from __future__ import annotations

import gzip
import json
from dataclasses import dataclass, field
from pathlib import Path

from edx.errors import FormatMismatch, InvalidArgument
from edx.model import (
    NEGATIVE_LABEL,
    Corpus,
    Document,
    EventType,
    Mention,
    Sentence,
    make_mention,
    normalize_trigger,
    validate,
)

FORMATS = ("maven", "rams", "aldg", "unified")

UNIFIED_SCHEMA_VERSION = 1


@dataclass
class IngestStats:
    """Per-file ingestion tally. event_mentions excludes negatives."""

    documents: int = 0
    sentences: int = 0
    event_types: int = 0
    event_mentions: int = 0
    negative_mentions: int = 0
    unlabeled_documents: int = 0
    skipped: dict[str, int] = field(default_factory=dict)
    first_skipped: str | None = None

    @property
    def skipped_total(self) -> int:
        return sum(self.skipped.values())

    def skip(self, reason: str, where: str) -> None:
        self.skipped[reason] = self.skipped.get(reason, 0) + 1
        if self.first_skipped is None:
            self.first_skipped = f"{where}: {reason}"


def _open_text(path, mode="rt"):
    if str(path).endswith(".gz"):
        return gzip.open(path, mode, encoding="utf-8")
    return open(path, mode, encoding="utf-8")


def _iter_lines(path):
    """Yield (line_number, parsed_record_or_None) for non-empty lines."""
    with _open_text(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                yield lineno, json.loads(line)
            except json.JSONDecodeError:
                yield lineno, None


class _DocBuilder:
    """Accumulates one document's mentions with per-mention skip accounting.

    seen_ids is shared across a whole file so mention ids stay corpus-unique.
    """

    def __init__(self, doc_id, title, topic, token_lists, stats, seen_ids=None):
        self.doc_id = doc_id
        self.stats = stats
        self.sentences = [
            Sentence(doc_id=doc_id, sent_idx=i, tokens=list(tokens))
            for i, tokens in enumerate(token_lists)
        ]
        self.mentions: list[Mention] = []
        self._spans: set[tuple[int, int, int, str]] = set()
        self._ids = seen_ids if seen_ids is not None else set()
        self.title = title
        self.topic = topic

    def add(self, mention_id, sent_idx, start, end, label) -> None:
        where = f"document {self.doc_id!r} mention {mention_id!r}"
        if not isinstance(sent_idx, int) or not 0 <= sent_idx < len(self.sentences):
            self.stats.skip("unknown-sentence", where)
            return
        tokens = self.sentences[sent_idx].tokens
        if not isinstance(start, int) or not isinstance(end, int) or start >= end or start < 0 or end > len(tokens):
            self.stats.skip("bad-span", where)
            return
        if not mention_id or not isinstance(mention_id, str):
            self.stats.skip("missing-mention-id", where)
            return
        if mention_id in self._ids:
            self.stats.skip("duplicate-mention-id", where)
            return
        key = (sent_idx, start, end, label)
        if key in self._spans:
            self.stats.skip("duplicate-mention", where)
            return
        self._spans.add(key)
        self._ids.add(mention_id)
        self.mentions.append(make_mention(mention_id, self.doc_id, sent_idx, start, end, tokens, label))

    def build(self) -> Document:
        return Document(
            doc_id=self.doc_id,
            title=self.title,
            topic=self.topic,
            sentences=self.sentences,
            mentions=self.mentions,
        )


def ingest(path, format: str) -> tuple[Corpus, IngestStats]:
    """Parse a dataset file into a validated Corpus plus its tally.

    Raises FormatMismatch when the file does not look like the declared
    format (bad header, or more than 10% malformed lines or mentions), and
    the usual OSError family when the file cannot be read.
    """
    if format not in FORMATS:
        raise InvalidArgument(f"unsupported format {format!r}; expected one of {', '.join(FORMATS)}")
    reader = {
        "maven": _read_maven,
        "rams": _read_rams,
        "aldg": _read_aldg,
        "unified": _read_unified,
    }[format]
    stats = IngestStats()
    corpus, lines_total, lines_bad = reader(path, stats)

    stats.documents = len(corpus.documents)
    stats.sentences = sum(len(d.sentences) for d in corpus.documents)
    stats.event_types = len(corpus.event_types)
    stats.event_mentions = sum(1 for d in corpus.documents for m in d.mentions if not m.is_negative)
    stats.negative_mentions = sum(1 for d in corpus.documents for m in d.mentions if m.is_negative)

    if lines_bad > 0 and lines_bad / lines_total > 0.10:
        raise FormatMismatch(
            f"{lines_bad} of {lines_total} records malformed in {path} "
            f"(first: {stats.first_skipped}); is this really {format} data?"
        )
    mention_skips = stats.skipped_total - lines_bad
    attempted = stats.event_mentions + stats.negative_mentions + mention_skips
    if mention_skips > 0 and attempted > 0 and mention_skips / attempted > 0.10:
        raise FormatMismatch(
            f"{mention_skips} of {attempted} mention records unusable in {path} "
            f"(first: {stats.first_skipped}); is this really {format} data?"
        )

    violations = validate(corpus)
    if violations:
        first = violations[0]
        raise FormatMismatch(f"adapter produced an invalid corpus ({len(violations)} violations; first: {first.message})")
    return corpus, stats


def _read_maven(path, stats):
    docs: list[Document] = []
    type_by_name: dict[str, int] = {}
    seen_ids: set[str] = set()
    lines_total = lines_bad = 0
    for lineno, rec in _iter_lines(path):
        lines_total += 1
        if rec is None or not isinstance(rec, dict) or "id" not in rec or "content" not in rec:
            lines_bad += 1
            stats.skip("malformed-line", f"line {lineno}")
            continue
        try:
            token_lists = [sent["tokens"] for sent in rec["content"]]
        except (TypeError, KeyError):
            lines_bad += 1
            stats.skip("malformed-line", f"line {lineno}")
            continue
        builder = _DocBuilder(rec["id"], rec.get("title", ""), rec.get("topic"), token_lists, stats, seen_ids)
        labeled = "events" in rec or "negative_triggers" in rec
        if not labeled:
            stats.unlabeled_documents += 1
        for event in rec.get("events", []):
            name = event.get("type")
            if not name:
                stats.skip("malformed-event", f"document {rec['id']!r} line {lineno}")
                continue
            type_by_name.setdefault(name, event.get("type_id", 0))
            for m in event.get("mention", []):
                offset = m.get("offset", [None, None])
                builder.add(m.get("id"), m.get("sent_id"), offset[0], offset[1], name)
        for m in rec.get("negative_triggers", []):
            offset = m.get("offset", [None, None])
            builder.add(m.get("id"), m.get("sent_id"), offset[0], offset[1], NEGATIVE_LABEL)
        docs.append(builder.build())
    event_types = _assign_type_ids(type_by_name)
    corpus = Corpus(name=Path(path).stem, domain="wikipedia", event_types=event_types, documents=docs)
    return corpus, lines_total, lines_bad


def _read_rams(path, stats):
    docs: list[Document] = []
    names: set[str] = set()
    seen_ids: set[str] = set()
    lines_total = lines_bad = 0
    for lineno, rec in _iter_lines(path):
        lines_total += 1
        if rec is None or not isinstance(rec, dict) or "doc_key" not in rec or "sentences" not in rec:
            lines_bad += 1
            stats.skip("malformed-line", f"line {lineno}")
            continue
        token_lists = rec["sentences"]
        builder = _DocBuilder(rec["doc_key"], rec.get("doc_key", ""), rec.get("topic"), token_lists, stats, seen_ids)
        # Document-level inclusive token spans; map onto the owning sentence.
        offsets = []
        base = 0
        for tokens in token_lists:
            offsets.append(base)
            base += len(tokens)
        for i, trig in enumerate(rec.get("evt_triggers", [])):
            try:
                doc_start, doc_end_incl, types = trig[0], trig[1], trig[2]
                name = types[0][0]
            except (TypeError, IndexError):
                stats.skip("malformed-event", f"document {rec['doc_key']!r} line {lineno}")
                continue
            sent_idx = max((j for j, off in enumerate(offsets) if off <= doc_start), default=0)
            local_start = doc_start - offsets[sent_idx]
            local_end = doc_end_incl - offsets[sent_idx] + 1
            if local_end > len(token_lists[sent_idx]):
                stats.skip("cross-sentence-trigger", f"document {rec['doc_key']!r} trigger {i}")
                continue
            names.add(name)
            builder.add(f"{rec['doc_key']}-evt{i}", sent_idx, local_start, local_end, name)
        docs.append(builder.build())
    event_types = _assign_type_ids({n: 0 for n in names})
    corpus = Corpus(name=Path(path).stem, domain="news", event_types=event_types, documents=docs)
    return corpus, lines_total, lines_bad


def _read_aldg(path, stats):
    docs: list[Document] = []
    names: set[str] = set()
    seen_ids: set[str] = set()
    lines_total = lines_bad = 0
    for lineno, rec in _iter_lines(path):
        lines_total += 1
        if rec is None or not isinstance(rec, dict) or "event_type" not in rec or "trigger" not in rec:
            lines_bad += 1
            stats.skip("malformed-line", f"line {lineno}")
            continue
        if "tokens" in rec:
            tokens = rec["tokens"]
        elif "sentence" in rec:
            tokens = rec["sentence"].split()
        else:
            lines_bad += 1
            stats.skip("malformed-line", f"line {lineno}")
            continue
        doc_id = rec.get("id") or f"aldg-{lineno}"
        builder = _DocBuilder(doc_id, rec.get("title", ""), rec.get("topic"), [tokens], stats, seen_ids)
        offset = rec.get("offset")
        if offset is None:
            offset = _locate(tokens, rec["trigger"])
        if offset is None:
            stats.skip("unlocatable-trigger", f"document {doc_id!r} line {lineno}")
        else:
            names.add(rec["event_type"])
            builder.add(f"{doc_id}-evt0", 0, offset[0], offset[1], rec["event_type"])
        docs.append(builder.build())
    event_types = _assign_type_ids({n: 0 for n in names})
    corpus = Corpus(name=Path(path).stem, domain="wikipedia", event_types=event_types, documents=docs)
    return corpus, lines_total, lines_bad


def _locate(tokens, trigger):
    """First token window whose normalized join matches the trigger."""
    try:
        want = normalize_trigger(trigger)
    except InvalidArgument:
        return None
    width = len(want.split())
    for start in range(0, len(tokens) - width + 1):
        surface = " ".join(tokens[start:start + width])
        if surface and normalize_trigger(surface) == want:
            return start, start + width
    return None


def _read_unified(path, stats):
    docs: list[Document] = []
    header = None
    seen_ids: set[str] = set()
    lines_total = lines_bad = 0
    declared: set[str] = set()
    for lineno, rec in _iter_lines(path):
        lines_total += 1
        if rec is None or not isinstance(rec, dict):
            lines_bad += 1
            stats.skip("malformed-line", f"line {lineno}")
            continue
        if header is None:
            if "schema_version" not in rec:
                raise FormatMismatch(f"line {lineno}: unified files start with a schema_version header line")
            if rec["schema_version"] != UNIFIED_SCHEMA_VERSION:
                raise FormatMismatch(f"unsupported unified schema_version {rec['schema_version']!r}")
            header = rec
            declared = {t["name"] for t in rec.get("event_types", [])}
            continue
        if "doc_id" not in rec or "sentences" not in rec:
            lines_bad += 1
            stats.skip("malformed-line", f"line {lineno}")
            continue
        builder = _DocBuilder(rec["doc_id"], rec.get("title", ""), rec.get("topic"), rec["sentences"], stats, seen_ids)
        for m in rec.get("mentions", []):
            label = m.get("type_name")
            if label != NEGATIVE_LABEL and label not in declared:
                stats.skip("unknown-event-type", f"document {rec['doc_id']!r} mention {m.get('id')!r}")
                continue
            builder.add(m.get("id"), m.get("sent"), m.get("start"), m.get("end"), label)
        docs.append(builder.build())
    if header is None:
        header = {"name": Path(path).stem, "domain": "", "event_types": []}
    event_types = [EventType(type_id=t["id"], name=t["name"]) for t in header.get("event_types", [])]
    corpus = Corpus(
        name=header.get("name", Path(path).stem),
        domain=header.get("domain", ""),
        event_types=event_types,
        documents=docs,
    )
    return corpus, lines_total, lines_bad


def doc_to_record(doc: Document) -> dict:
    """One document as a unified-format JSON record."""
    rec = {"doc_id": doc.doc_id, "title": doc.title}
    if doc.topic is not None:
        rec["topic"] = doc.topic
    rec["sentences"] = [s.tokens for s in doc.sentences]
    rec["mentions"] = [
        {"id": m.mention_id, "sent": m.sent_idx, "start": m.start, "end": m.end, "type_name": m.label}
        for m in doc.mentions
    ]
    return rec


def doc_from_record(rec: dict) -> Document:
    """Strict inverse of doc_to_record; callers validate the resulting corpus."""
    sentences = [
        Sentence(doc_id=rec["doc_id"], sent_idx=i, tokens=list(tokens))
        for i, tokens in enumerate(rec["sentences"])
    ]
    mentions = [
        make_mention(
            m["id"], rec["doc_id"], m["sent"], m["start"], m["end"],
            sentences[m["sent"]].tokens, m["type_name"],
        )
        for m in rec.get("mentions", [])
    ]
    return Document(
        doc_id=rec["doc_id"],
        title=rec.get("title", ""),
        topic=rec.get("topic"),
        sentences=sentences,
        mentions=mentions,
    )


def _assign_type_ids(type_by_name: dict[str, int]) -> list[EventType]:
    """Keep source-provided ids when usable, else number names alphabetically."""
    ids = [i for i in type_by_name.values() if isinstance(i, int) and i >= 1]
    usable = len(ids) == len(type_by_name) and len(set(ids)) == len(ids)
    if usable:
        return sorted(
            (EventType(type_id=i, name=n) for n, i in type_by_name.items()),
            key=lambda t: t.type_id,
        )
    return [EventType(type_id=i, name=n) for i, n in enumerate(sorted(type_by_name), start=1)]


def export_unified(corpus: Corpus, path) -> int:
    """Write the unified line-delimited format; returns document records written.

    Line 1 is a header object carrying schema_version, corpus name, domain,
    and the declared event types; every following line is one document.
    ingest(path, "unified") reproduces the corpus exactly.
    """
    header = {
        "schema_version": UNIFIED_SCHEMA_VERSION,
        "name": corpus.name,
        "domain": corpus.domain,
        "event_types": [{"id": t.type_id, "name": t.name} for t in corpus.event_types],
    }
    written = 0
    with _open_text(path, "wt") as fh:
        fh.write(json.dumps(header, ensure_ascii=False, separators=(",", ":")) + "\n")
        for doc in corpus.documents:
            fh.write(json.dumps(doc_to_record(doc), ensure_ascii=False, separators=(",", ":")) + "\n")
            written += 1
    return written
