"""Dataset-quality reports computed from a trigger index.

Everything here is a pure function of the index (plus the corpus for the
topic histogram), so recomputing on a reloaded snapshot yields identical
reports. Three knobs from AnalyticsConfig drive the reports: the cohort
floor k, the dominance ratio r, and the negative-anomaly share.
"""

from __future__ import annotations

from dataclasses import dataclass

from edx.errors import InvalidArgument
from edx.index import TriggerIndex
from edx.model import NEGATIVE_LABEL, Corpus

# Trigger-set overlap above which two events count as hard to distinguish.
AMBIGUITY_JACCARD = 0.3

NEGATIVE_TRIGGER = "NEGATIVE_TRIGGER"
TRIGGER_WRONG_EVENT = "TRIGGER_WRONG_EVENT"
EVENT_AMBIGUITY = "EVENT_AMBIGUITY"
CATEGORIES = (NEGATIVE_TRIGGER, TRIGGER_WRONG_EVENT, EVENT_AMBIGUITY)


@dataclass(frozen=True)
class AnalyticsConfig:
    min_instances: int = 20
    dominance_ratio: float = 5.0
    rare_event_max: int = 2
    negative_anomaly_share: float = 0.5

    def __post_init__(self):
        if self.min_instances < 1:
            raise InvalidArgument(f"min_instances must be >= 1, got {self.min_instances}")
        if self.dominance_ratio <= 0:
            raise InvalidArgument(f"dominance_ratio must be > 0, got {self.dominance_ratio}")
        if not 0 < self.negative_anomaly_share < 1:
            raise InvalidArgument(f"negative_anomaly_share must be in (0,1), got {self.negative_anomaly_share}")


@dataclass(frozen=True)
class SparsityReport:
    corpus: str
    k: int
    candidate_triggers: int
    positive_triggers: int
    annotated_instances: int
    cohort_size: int
    cohort_instances: int
    cohort_coverage_fraction: float


def _cohort(index: TriggerIndex, k: int) -> list:
    return [e for e in index.by_trigger.values() if e.per_event_counts and e.positive_count >= k]


def sparsity(index: TriggerIndex, config: AnalyticsConfig = AnalyticsConfig()) -> SparsityReport:
    """How concentrated the annotation mass is: triggers with >= k positive instances."""
    cohort = _cohort(index, config.min_instances)
    cohort_instances = sum(e.positive_count for e in cohort)
    annotated = index.totals.annotated_instances
    return SparsityReport(
        corpus=index.corpus_ref,
        k=config.min_instances,
        candidate_triggers=index.totals.candidate_triggers,
        positive_triggers=index.totals.positive_triggers,
        annotated_instances=annotated,
        cohort_size=len(cohort),
        cohort_instances=cohort_instances,
        cohort_coverage_fraction=cohort_instances / annotated if annotated else 0.0,
    )


@dataclass(frozen=True)
class TriggerDominance:
    """Dominance verdict for one cohort trigger.

    ratio is top-event count over the summed counts of the other events
    (negatives excluded); None means the trigger has exactly one event and
    the ratio is unbounded.
    """

    trigger: str
    total_positive: int
    event_count: int
    dominant_event: str
    ratio: float | None
    dominant: bool


@dataclass(frozen=True)
class DominanceReport:
    corpus: str
    k: int
    ratio_threshold: float
    positive_triggers: int
    single_event_triggers: int
    single_event_fraction: float
    cohort_size: int
    cohort_dominant_count: int
    cohort_dominant_fraction: float
    cohort_dominant_count_with_single: int
    cohort_dominant_fraction_with_single: float
    triggers: list[TriggerDominance]


def _dominance_of(entry, threshold: float) -> TriggerDominance:
    # Deterministic argmax: largest count, then lexicographically first name.
    ranked = sorted(entry.per_event_counts.items(), key=lambda kv: (-kv[1], kv[0]))
    top_event, top_count = ranked[0]
    rest = entry.positive_count - top_count
    if len(ranked) == 1:
        ratio, dominant = None, True
    else:
        ratio = top_count / rest
        dominant = ratio > threshold
    return TriggerDominance(
        trigger=entry.normalized,
        total_positive=entry.positive_count,
        event_count=len(ranked),
        dominant_event=top_event,
        ratio=ratio,
        dominant=dominant,
    )


def dominance(index: TriggerIndex, config: AnalyticsConfig = AnalyticsConfig()) -> DominanceReport:
    """Label-imbalance report: single-event triggers and dominant events.

    Dominance is evaluated over the sparsity cohort only (strictly
    ratio > r). Because whether single-event triggers belong in the cohort
    dominant count is a judgment call, both readings are reported.
    """
    positive = index.totals.positive_triggers
    single = sum(1 for e in index.by_trigger.values() if len(e.per_event_counts) == 1)
    cohort = sorted(_cohort(index, config.min_instances), key=lambda e: (-e.positive_count, e.normalized))
    verdicts = [_dominance_of(e, config.dominance_ratio) for e in cohort]
    multi_dominant = sum(1 for v in verdicts if v.dominant and v.ratio is not None)
    with_single = sum(1 for v in verdicts if v.dominant)
    size = len(verdicts)
    return DominanceReport(
        corpus=index.corpus_ref,
        k=config.min_instances,
        ratio_threshold=config.dominance_ratio,
        positive_triggers=positive,
        single_event_triggers=single,
        single_event_fraction=single / positive if positive else 0.0,
        cohort_size=size,
        cohort_dominant_count=multi_dominant,
        cohort_dominant_fraction=multi_dominant / size if size else 0.0,
        cohort_dominant_count_with_single=with_single,
        cohort_dominant_fraction_with_single=with_single / size if size else 0.0,
        triggers=verdicts,
    )


@dataclass(frozen=True)
class EventOverview:
    name: str
    type_id: int
    count: int
    top_triggers: list[tuple[str, int]]


@dataclass(frozen=True)
class OverviewReport:
    corpus: str
    total_instances: int
    events: list[EventOverview]
    topic_histogram: dict[str, int]

    def events_below(self, n: int) -> list[str]:
        """Event names with fewer than n instances, rarest first."""
        hits = [(e.count, e.name) for e in self.events if e.count < n]
        return [name for _, name in sorted(hits)]


def overview(index: TriggerIndex, corpus: Corpus, top_n: int = 10) -> OverviewReport:
    """Per-event mention counts with top triggers, plus the document topic histogram."""
    events = []
    for entry in index.by_event.values():
        ranked = sorted(entry.trigger_counts.items(), key=lambda kv: (-kv[1], kv[0]))
        events.append(EventOverview(
            name=entry.event.name,
            type_id=entry.event.type_id,
            count=entry.mention_count,
            top_triggers=ranked[:top_n],
        ))
    events.sort(key=lambda e: (-e.count, e.name))
    histogram: dict[str, int] = {}
    for doc in corpus.documents:
        topic = doc.topic if doc.topic is not None else "unknown"
        histogram[topic] = histogram.get(topic, 0) + 1
    histogram = dict(sorted(histogram.items(), key=lambda kv: (-kv[1], kv[0])))
    return OverviewReport(
        corpus=index.corpus_ref,
        total_instances=index.totals.annotated_instances,
        events=events,
        topic_histogram=histogram,
    )


@dataclass(frozen=True)
class ReviewCandidate:
    doc_id: str
    sent_idx: int
    mention_id: str
    trigger: str
    label: str
    category: str
    score: float
    rationale: str


def flag_review_candidates(index: TriggerIndex, corpus: Corpus,
                           config: AnalyticsConfig = AnalyticsConfig()) -> list[ReviewCandidate]:
    """Heuristic shortlist of annotations worth a human look.

    Three categories mirror the common annotation problems: negatives of
    triggers that usually do fire (NEGATIVE_TRIGGER), rare odd-one-out
    labels under a dominant event (TRIGGER_WRONG_EVENT), and minority
    sides of triggers shared by heavily overlapping event pairs
    (EVENT_AMBIGUITY). Suggestions only; nothing is auto-corrected.
    """
    best: dict[tuple[str, str], ReviewCandidate] = {}

    def put(candidate: ReviewCandidate) -> None:
        key = (candidate.mention_id, candidate.category)
        kept = best.get(key)
        if kept is None or candidate.score > kept.score:
            best[key] = candidate

    for trigger in sorted(index.by_trigger):
        entry = index.by_trigger[trigger]
        if not entry.per_event_counts or not entry.negative_count:
            continue
        share = entry.positive_count / entry.total_count
        if share >= config.negative_anomaly_share:
            rationale = (f"{trigger!r} triggers an event in {share:.1%} of its "
                         f"{entry.total_count} occurrences but is annotated negative here")
            for doc_id, sent_idx, mention_id in entry.instance_refs.get(NEGATIVE_LABEL, []):
                put(ReviewCandidate(doc_id, sent_idx, mention_id, trigger, NEGATIVE_LABEL,
                                    NEGATIVE_TRIGGER, share, rationale))

    cohort_verdicts = dominance(index, config).triggers
    for verdict in cohort_verdicts:
        if not verdict.dominant or verdict.event_count < 2:
            continue
        entry = index.by_trigger[verdict.trigger]
        for event in sorted(entry.per_event_counts):
            count = entry.per_event_counts[event]
            if event == verdict.dominant_event or count > config.rare_event_max:
                continue
            score = 1.0 - count / verdict.total_positive
            rationale = (f"{verdict.trigger!r} triggers {verdict.dominant_event} in "
                         f"{entry.per_event_counts[verdict.dominant_event]} instances; "
                         f"{event} has only {count}")
            for doc_id, sent_idx, mention_id in entry.instance_refs.get(event, []):
                put(ReviewCandidate(doc_id, sent_idx, mention_id, verdict.trigger, event,
                                    TRIGGER_WRONG_EVENT, score, rationale))

    cohort_triggers = {v.trigger for v in cohort_verdicts}
    sets: dict[str, set[str]] = {}
    for trigger in cohort_triggers:
        for event in index.by_trigger[trigger].per_event_counts:
            sets.setdefault(event, set()).add(trigger)
    events = sorted(sets)
    for i, first in enumerate(events):
        for second in events[i + 1:]:
            union = sets[first] | sets[second]
            shared = sets[first] & sets[second]
            jaccard = len(shared) / len(union)
            if jaccard < AMBIGUITY_JACCARD:
                continue
            for trigger in sorted(shared):
                entry = index.by_trigger[trigger]
                c1, c2 = entry.per_event_counts[first], entry.per_event_counts[second]
                if c1 == c2:
                    continue  # no minority side to question
                minority, majority = (first, second) if c1 < c2 else (second, first)
                score = max(c1, c2) / (c1 + c2)
                rationale = (f"events {first!r} and {second!r} overlap on {len(shared)} cohort "
                             f"triggers (Jaccard {jaccard:.2f}); {trigger!r} is mostly {majority}")
                for doc_id, sent_idx, mention_id in entry.instance_refs.get(minority, []):
                    put(ReviewCandidate(doc_id, sent_idx, mention_id, trigger, minority,
                                        EVENT_AMBIGUITY, score, rationale))

    ranked = sorted(
        best.values(),
        key=lambda c: (-c.score, c.category, c.trigger, c.doc_id, c.sent_idx, c.mention_id),
    )
    return ranked
