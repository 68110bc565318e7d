"""Command-line entry point: ingest, stats, audit, train, annotate, serve.

Each command wraps exactly one module operation. Exit status: 0 success,
1 data error, 2 usage error (bad flags or missing files). --json output
reuses the API's serialization functions, so it is byte-identical to the
corresponding endpoint payload for the same snapshot and parameters.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from edx import analytics, serialize
from edx.annotator import annotate, load_model, save_model, train_lexicon, Thresholds
from edx.errors import EdxError
from edx.index import load_snapshot, save_snapshot
from edx.ingest import FORMATS, export_unified, ingest

PROG = "edx"


def _rows(pairs) -> str:
    width = max(len(name) for name, _ in pairs)
    return "\n".join(f"{name:<{width}}  {value}" for name, value in pairs)


def _emit_json(payload) -> None:
    print(serialize.dump_json(payload))


def _require_file(parser, path, what) -> None:
    if not Path(path).is_file():
        parser.error(f"{what} {path!r} does not exist")


def cmd_ingest(args, parser) -> int:
    _require_file(parser, args.input, "--input file")
    corpus, stats = ingest(args.input, args.format)
    save_snapshot(corpus, args.out)
    pairs = [
        ("corpus", corpus.name),
        ("documents", f"{stats.documents:,}"),
        ("sentences", f"{stats.sentences:,}"),
        ("event types", f"{stats.event_types:,}"),
        ("event mentions", f"{stats.event_mentions:,}"),
        ("negative mentions", f"{stats.negative_mentions:,}"),
    ]
    if stats.unlabeled_documents:
        pairs.append(("unlabeled documents", f"{stats.unlabeled_documents:,}"))
    for reason, count in sorted(stats.skipped.items()):
        pairs.append((f"skipped ({reason})", f"{count:,}"))
    pairs.append(("snapshot", str(args.out)))
    print(_rows(pairs))
    return 0


def cmd_stats(args, parser) -> int:
    _require_file(parser, args.snapshot, "--snapshot file")
    corpus, index = load_snapshot(args.snapshot)
    config = analytics.AnalyticsConfig(min_instances=args.k, dominance_ratio=args.ratio)

    if args.report == "sparsity":
        report = analytics.sparsity(index, config)
        if args.json:
            _emit_json(serialize.sparsity_payload(report))
        else:
            print(_rows([
                ("corpus", report.corpus),
                ("candidate triggers", f"{report.candidate_triggers:,}"),
                ("positive triggers", f"{report.positive_triggers:,}"),
                ("annotated instances", f"{report.annotated_instances:,}"),
                (f"cohort size (k={report.k})", f"{report.cohort_size:,}"),
                ("cohort instances", f"{report.cohort_instances:,}"),
                ("cohort coverage", f"{report.cohort_coverage_fraction:.0%}"),
            ]))
    elif args.report == "dominance":
        report = analytics.dominance(index, config)
        if args.json:
            _emit_json(serialize.dominance_payload(report))
        else:
            print(_rows([
                ("corpus", report.corpus),
                ("positive triggers", f"{report.positive_triggers:,}"),
                ("single-event triggers", f"{report.single_event_triggers:,} ({report.single_event_fraction:.0%})"),
                (f"cohort size (k={report.k})", f"{report.cohort_size:,}"),
                (f"dominant (ratio>{report.ratio_threshold:g})",
                 f"{report.cohort_dominant_count:,} ({report.cohort_dominant_fraction:.0%})"),
                ("dominant incl. single-event",
                 f"{report.cohort_dominant_count_with_single:,} ({report.cohort_dominant_fraction_with_single:.0%})"),
            ]))
            head = report.triggers[:10]
            if head:
                print()
                print(_rows([
                    (v.trigger,
                     f"{v.dominant_event} ratio={'UNBOUNDED' if v.ratio is None else f'{v.ratio:.2f}'} "
                     f"({'dominant' if v.dominant else 'not dominant'})")
                    for v in head
                ]))
    else:
        report = analytics.overview(index, corpus)
        if args.json:
            _emit_json(serialize.overview_payload(report))
        else:
            print(_rows([
                ("corpus", report.corpus),
                ("total instances", f"{report.total_instances:,}"),
                ("event types", f"{len(report.events):,}"),
                ("events below 100", f"{len(report.events_below(100)):,}"),
            ]))
            print()
            print(_rows([
                (e.name, f"{e.count:,}  top: " + ", ".join(f"{t} ({c:,})" for t, c in e.top_triggers[:3]))
                for e in report.events[:10]
            ]))
    return 0


def cmd_audit(args, parser) -> int:
    _require_file(parser, args.snapshot, "--snapshot file")
    corpus, index = load_snapshot(args.snapshot)
    candidates = analytics.flag_review_candidates(index, corpus)
    if args.category:
        candidates = [c for c in candidates if c.category == args.category]
    if args.json:
        _emit_json(serialize.candidates_payload(candidates, page=1, size=max(1, len(candidates))))
        return 0
    if not candidates:
        print("no review candidates")
        return 0
    shown = candidates[:50]
    print(_rows([
        (f"{c.category} {c.score:.3f}", f"{c.trigger!r} as {c.label} in {c.doc_id}#{c.sent_idx}")
        for c in shown
    ]))
    if len(candidates) > len(shown):
        print(f"... and {len(candidates) - len(shown):,} more (use --json for the full list)")
    return 0


def cmd_train(args, parser) -> int:
    _require_file(parser, args.snapshot, "--snapshot file")
    _, index = load_snapshot(args.snapshot)
    model = train_lexicon(index, Thresholds(tau_neg=args.tau_neg, tau_event=args.tau_event))
    save_model(model, args.out)
    print(_rows([
        ("source", model.source),
        ("entries", f"{len(model.entries):,}"),
        ("max trigger tokens", str(model.max_trigger_tokens)),
        ("tau_neg", f"{model.thresholds.tau_neg:g}"),
        ("tau_event", f"{model.thresholds.tau_event:g}"),
        ("model", str(args.out)),
    ]))
    return 0


def _render_annotated_sentence(sentence) -> str:
    by_start = {span.start: span for span in sentence.spans}
    parts, i = [], 0
    while i < len(sentence.tokens):
        span = by_start.get(i)
        if span is not None:
            chunk = " ".join(sentence.tokens[i:span.end])
            parts.append(f"[{chunk} -> {span.event} ({span.confidence:.2f})]")
            i = span.end
        else:
            parts.append(sentence.tokens[i])
            i += 1
    return " ".join(parts)


def cmd_annotate(args, parser) -> int:
    _require_file(parser, args.model, "--model file")
    if args.text is None and args.input is None:
        parser.error("one of --text or --input is required")
    if args.text is not None and args.input is not None:
        parser.error("--text and --input are mutually exclusive")
    if args.input is not None:
        _require_file(parser, args.input, "--input file")
        text = Path(args.input).read_text(encoding="utf-8")
    else:
        text = args.text
    model = load_model(args.model)
    result = annotate(model, text)
    if args.json:
        _emit_json(serialize.annotated_payload(result, model.source))
    else:
        for sentence in result.sentences:
            print(_render_annotated_sentence(sentence))
    return 0


def cmd_serve(args, parser) -> int:
    config_path = args.config or os.environ.get("EDX_CONFIG")
    if not config_path:
        parser.error("--config is required (or set EDX_CONFIG)")
    _require_file(parser, config_path, "config file")
    from edx import api

    api.serve(api.load_config(config_path))
    return 0


def cmd_export(args, parser) -> int:
    _require_file(parser, args.snapshot, "--snapshot file")
    corpus, _ = load_snapshot(args.snapshot)
    written = export_unified(corpus, args.out)
    print(_rows([("documents", f"{written:,}"), ("unified file", str(args.out))]))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROG, description="event-detection corpus explorer")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse a dataset file into a snapshot")
    p.add_argument("--format", required=True, choices=FORMATS)
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("stats", help="run a dataset-quality report")
    p.add_argument("report", choices=("overview", "sparsity", "dominance"))
    p.add_argument("--snapshot", required=True)
    p.add_argument("--k", type=int, default=20)
    p.add_argument("--ratio", type=float, default=5.0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("audit", help="list debatable-annotation review candidates")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--category", choices=analytics.CATEGORIES)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("train", help="train a trigger lexicon from a snapshot")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--tau-neg", type=float, default=0.5, dest="tau_neg")
    p.add_argument("--tau-event", type=float, default=0.5, dest="tau_event")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("annotate", help="annotate text with a trained lexicon")
    p.add_argument("--model", required=True)
    p.add_argument("--text")
    p.add_argument("--input")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("serve", help="serve the REST API (and optionally the web UI)")
    p.add_argument("--config")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("export", help="write a snapshot back out as unified JSONL")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except EdxError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
