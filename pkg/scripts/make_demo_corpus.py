#!/usr/bin/env python3
"""Write a small demo corpus in the unified format.

The corpus mirrors the golden trigger table (crash/damage/storm with
their event and negative-trigger counts) plus a block of motion triggers
so at least one event type has more than ten distinct triggers. Useful
for exploring the UI and for end-to-end tests:

    python3 scripts/make_demo_corpus.py demo.jsonl
    edx ingest --format unified --input demo.jsonl --out demo.snapshot.json
"""

import argparse

from edx.ingest import export_unified
from edx.model import NEGATIVE_LABEL, Corpus, Document, EventType, Sentence, make_mention

ROWS = {
    "crash": ({"Catastrophe": 174, "Damaging": 4, "Motion": 2, "Attack": 2}, 153),
    "damage": ({"Damaging": 619, "Causation": 1, "Destroying": 1, "Bodily Harm": 1}, 275),
    "storm": ({"Catastrophe": 925, "Attack": 14, "Self Motion": 5, "Damaging": 1, "Motion": 1, "Bodily Harm": 1}, 771),
    # twelve distinct motion triggers so the event page's top-10 cut is visible
    **{f"move{i}": ({"Motion": 3 + i}, 2) for i in range(12)},
}

TOPICS = ("hurricane", "military conflict", None, "concert tour")


def build_corpus(name):
    event_names = sorted({event for events, _ in ROWS.values() for event in events})
    event_types = [EventType(i + 1, n) for i, n in enumerate(event_names)]
    instances = []
    for trigger, (events, negatives) in ROWS.items():
        trigger_tokens = trigger.split(" ")
        tokens = ["they", "saw", "the", *trigger_tokens, "again", "."]
        span = (3, 3 + len(trigger_tokens))
        for event in sorted(events):
            instances.extend((tokens, span, event) for _ in range(events[event]))
        instances.extend((tokens, span, NEGATIVE_LABEL) for _ in range(negatives))
    per_doc = 50
    documents = []
    for offset in range(0, len(instances), per_doc):
        doc_no = offset // per_doc
        doc_id = f"{name}-d{doc_no:04d}"
        sentences, mentions = [], []
        for i, (tokens, (start, end), label) in enumerate(instances[offset:offset + per_doc]):
            sentences.append(Sentence(doc_id, i, list(tokens)))
            mentions.append(make_mention(f"m{offset + i:06d}", doc_id, i, start, end, tokens, label))
        documents.append(Document(doc_id, f"demo document {doc_no}", TOPICS[doc_no % len(TOPICS)], sentences, mentions))
    return Corpus(name=name, domain="demo", event_types=event_types, documents=documents)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out", help="unified JSONL path to write")
    parser.add_argument("--name", default="demo")
    args = parser.parse_args()
    corpus = build_corpus(args.name)
    written = export_unified(corpus, args.out)
    mentions = sum(len(d.mentions) for d in corpus.documents)
    print(f"wrote {written} documents ({mentions} mentions) to {args.out}")


if __name__ == "__main__":
    main()
