"""JSON payload shapes shared by the CLI and the REST API.

There is exactly one serialization contract: the CLI's --json output and
the API's response bodies are produced by the same functions here, so
they are byte-identical for the same snapshot and parameters. Field
names are documented in docs/api.md; changing them is an API break.
"""

from __future__ import annotations

import json
from urllib.parse import quote

from edx.analytics import DominanceReport, OverviewReport, ReviewCandidate, SparsityReport
from edx.annotator import AnnotatedText, EvaluationReport
from edx.index import EventEntry, Page, RenderedInstance, TriggerEntry, TriggerIndex


def dump_json(payload) -> str:
    """Compact canonical JSON; matches the API's response encoder."""
    return json.dumps(payload, ensure_ascii=False, allow_nan=False, separators=(",", ":"))


def totals_payload(index: TriggerIndex) -> dict:
    t = index.totals
    return {
        "candidate_triggers": t.candidate_triggers,
        "positive_triggers": t.positive_triggers,
        "annotated_instances": t.annotated_instances,
        "negative_instances": t.negative_instances,
    }


def rendered_instance_payload(instance: RenderedInstance) -> dict:
    return {
        "doc_id": instance.doc_id,
        "sent_idx": instance.sent_idx,
        "tokens": instance.tokens,
        "spans": [
            {"start": s.start, "end": s.end, "label": s.label, "kind": s.kind, "is_focus": s.is_focus}
            for s in instance.spans
        ],
    }


def page_payload(page: Page, item_fn) -> dict:
    return {
        "items": [item_fn(item) for item in page.items],
        "total": page.total,
        "page": page.page,
        "size": page.page_size,
    }


def trigger_entry_payload(entry: TriggerEntry) -> dict:
    ranked = sorted(entry.per_event_counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return {
        "trigger": entry.normalized,
        "events": [{"name": name, "count": count} for name, count in ranked],
        "negative_count": entry.negative_count,
        "positive_count": entry.positive_count,
        "total": entry.total_count,
    }


def event_entry_payload(entry: EventEntry) -> dict:
    return {
        "name": entry.event.name,
        "type_id": entry.event.type_id,
        "count": entry.mention_count,
        "distinct_triggers": len(entry.trigger_counts),
    }


def top_triggers_payload(event: str, ranked: list[tuple[str, int]]) -> dict:
    return {
        "event": event,
        "triggers": [{"trigger": t, "count": c} for t, c in ranked],
    }


def sparsity_payload(report: SparsityReport) -> dict:
    return {
        "corpus": report.corpus,
        "k": report.k,
        "candidate_triggers": report.candidate_triggers,
        "positive_triggers": report.positive_triggers,
        "annotated_instances": report.annotated_instances,
        "cohort_size": report.cohort_size,
        "cohort_instances": report.cohort_instances,
        "cohort_coverage": report.cohort_coverage_fraction,
    }


def dominance_payload(report: DominanceReport) -> dict:
    return {
        "corpus": report.corpus,
        "k": report.k,
        "ratio": report.ratio_threshold,
        "positive_triggers": report.positive_triggers,
        "single_event_triggers": {
            "count": report.single_event_triggers,
            "fraction": report.single_event_fraction,
        },
        "cohort_size": report.cohort_size,
        "cohort_dominant": {
            "count": report.cohort_dominant_count,
            "fraction": report.cohort_dominant_fraction,
        },
        "cohort_dominant_with_single": {
            "count": report.cohort_dominant_count_with_single,
            "fraction": report.cohort_dominant_fraction_with_single,
        },
        "triggers": [
            {
                "trigger": v.trigger,
                "total_positive": v.total_positive,
                "event_count": v.event_count,
                "dominant_event": v.dominant_event,
                "ratio": v.ratio,
                "dominant": v.dominant,
            }
            for v in report.triggers
        ],
    }


def overview_payload(report: OverviewReport) -> dict:
    return {
        "corpus": report.corpus,
        "total_instances": report.total_instances,
        "events": [
            {
                "name": e.name,
                "type_id": e.type_id,
                "count": e.count,
                "triggers": [{"trigger": t, "count": c} for t, c in e.top_triggers],
            }
            for e in report.events
        ],
        "events_below_100": report.events_below(100),
        "topics": [{"topic": t, "documents": n} for t, n in report.topic_histogram.items()],
    }


def candidate_payload(candidate: ReviewCandidate) -> dict:
    return {
        "category": candidate.category,
        "score": candidate.score,
        "doc_id": candidate.doc_id,
        "sent_idx": candidate.sent_idx,
        "mention_id": candidate.mention_id,
        "trigger": candidate.trigger,
        "label": candidate.label,
        "rationale": candidate.rationale,
    }


def candidates_payload(candidates: list[ReviewCandidate], page: int, size: int) -> dict:
    window = candidates[(page - 1) * size:page * size]
    return {
        "items": [candidate_payload(c) for c in window],
        "total": len(candidates),
        "page": page,
        "size": size,
    }


def explorer_links(dataset: str, trigger: str, event: str) -> dict:
    return {
        "trigger_url": f"/d/{quote(dataset, safe='')}/trigger/{quote(trigger, safe='')}",
        "event_url": f"/d/{quote(dataset, safe='')}/event/{quote(event, safe='')}",
    }


def annotated_payload(annotated: AnnotatedText, dataset: str) -> dict:
    return {
        "dataset": dataset,
        "sentences": [
            {
                "tokens": s.tokens,
                "spans": [
                    {
                        "start": span.start,
                        "end": span.end,
                        "event": span.event,
                        "confidence": span.confidence,
                        "trigger": span.trigger,
                        "links": explorer_links(dataset, span.trigger, span.event),
                    }
                    for span in s.spans
                ],
            }
            for s in annotated.sentences
        ],
    }


def evaluation_payload(report: EvaluationReport) -> dict:
    def scores(s):
        return {"precision": s.precision, "recall": s.recall, "f1": s.f1,
                "tp": s.tp, "fp": s.fp, "fn": s.fn}

    return {
        "per_event": {name: scores(s) for name, s in report.per_event.items()},
        "micro": scores(report.micro),
    }
