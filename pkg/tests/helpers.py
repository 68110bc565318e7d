"""Corpus builders shared across the test modules."""

from __future__ import annotations

import random

from edx.model import NEGATIVE_LABEL, Corpus, Document, EventType, Sentence, make_mention

# The golden trigger table: event counts and negative counts for three
# well-studied triggers. Used to pin index and analytics behavior.
TABLE2_ROWS = {
    "crash": ({"Catastrophe": 174, "Damaging": 4, "Motion": 2, "Attack": 2}, 153),
    "damage": ({"Damaging": 619, "Causation": 1, "Destroying": 1, "Bodily Harm": 1}, 275),
    "storm": ({"Catastrophe": 925, "Attack": 14, "Self Motion": 5, "Damaging": 1, "Motion": 1, "Bodily Harm": 1}, 771),
}


def corpus_from_rows(rows, name="fixture", domain="test", per_doc=50, topics=()):
    """Corpus with one single-mention sentence per instance of each row.

    rows maps trigger -> ({event: count}, negative_count). Filler tokens
    never collide with trigger words.
    """
    names = sorted({event for events, _ in rows.values() for event in events})
    event_types = [EventType(i + 1, n) for i, n in enumerate(names)]
    instances = []
    for trigger, (events, negatives) in rows.items():
        trigger_tokens = trigger.split(" ")
        tokens = ["they", "saw", "the", *trigger_tokens, "again", "."]
        span = (3, 3 + len(trigger_tokens))
        for event in sorted(events):
            instances.extend((tokens, span, event) for _ in range(events[event]))
        instances.extend((tokens, span, NEGATIVE_LABEL) for _ in range(negatives))
    documents = []
    for offset in range(0, len(instances), per_doc):
        doc_no = offset // per_doc
        doc_id = f"{name}-d{doc_no:04d}"
        sentences, mentions = [], []
        for i, (tokens, (start, end), label) in enumerate(instances[offset:offset + per_doc]):
            sentences.append(Sentence(doc_id, i, list(tokens)))
            mentions.append(make_mention(f"m{offset + i:06d}", doc_id, i, start, end, tokens, label))
        topic = topics[doc_no % len(topics)] if topics else None
        documents.append(Document(doc_id, f"document {doc_no}", topic, sentences, mentions))
    return Corpus(name=name, domain=domain, event_types=event_types, documents=documents)


def table2_corpus(name="table2"):
    return corpus_from_rows(TABLE2_ROWS, name=name)


def random_rows(rng: random.Random, max_triggers=8, max_events=5, max_count=30, max_negative=20):
    """Random trigger table; every trigger has at least one instance."""
    events = [f"Ev{chr(65 + i)}" for i in range(rng.randint(1, max_events))]
    pool = [f"w{i}" for i in range(10)] + ["w10 w11", "w12 w13"]
    rows = {}
    for trigger in rng.sample(pool, rng.randint(1, max_triggers)):
        chosen = rng.sample(events, rng.randint(0, min(3, len(events))))
        counts = {e: rng.randint(1, max_count) for e in chosen}
        negatives = rng.randint(0 if counts else 1, max_negative)
        rows[trigger] = (counts, negatives)
    return rows


VOCAB = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta"]


def random_corpus(rng: random.Random, name="rand", max_docs=4):
    """Structurally rich random corpus: co-occurring and multi-token
    mentions, topics, and possibly unused declared event types. Valid by
    construction; at most ~100 mentions."""
    event_types = [EventType(i + 1, f"Ev{i + 1}") for i in range(rng.randint(1, 5))]
    labels = [t.name for t in event_types] + [NEGATIVE_LABEL]
    documents = []
    mention_no = 0
    for d in range(rng.randint(0, max_docs)):
        doc_id = f"{name}-doc{d}"
        sentences, mentions = [], []
        for s in range(rng.randint(1, 5)):
            tokens = [rng.choice(VOCAB) for _ in range(rng.randint(3, 8))]
            sentences.append(Sentence(doc_id, s, tokens))
            used = set()
            for _ in range(rng.randint(0, 3)):
                start = rng.randrange(0, len(tokens))
                end = min(len(tokens), start + rng.randint(1, 2))
                label = rng.choice(labels)
                if (start, end, label) in used:
                    continue
                used.add((start, end, label))
                mentions.append(make_mention(f"{name}-m{mention_no}", doc_id, s, start, end, tokens, label))
                mention_no += 1
        topic = rng.choice([None, "war", "nature", "sports"])
        documents.append(Document(doc_id, f"title {d}", topic, sentences, mentions))
    return Corpus(name=name, domain="test", event_types=event_types, documents=documents)
