// Pure HTML rendering: payload in, markup string out. No fetching and no
// statistics arithmetic here; every number shown comes from the API.

import { barChart } from "./charts.js";
import { escapeHtml } from "./html.js";
import { viewToUrl, type View } from "./state.js";
import type {
  AnnotatePayload,
  DatasetSummary,
  OverviewPayload,
  Paged,
  RenderedInstance,
  RenderedSpan,
  TopTriggersPayload,
  TriggerSummaryPayload,
} from "./types.js";

export const NEGATIVE = "NEGATIVE";

// The color class of a rendered span depends on nothing but its kind and
// focus flag: positive triggers read red, negative candidates blue.
export function spanClasses(kind: "positive" | "negative", isFocus: boolean): string {
  const base = kind === "positive" ? "span-positive" : "span-negative";
  return isFocus ? `${base} span-focus` : base;
}

function link(url: string, text: string, cls = ""): string {
  const className = cls ? ` class="${cls}"` : "";
  return `<a href="${escapeHtml(url)}" data-link${className}>${escapeHtml(text)}</a>`;
}

export function renderInstance(ds: string, instance: RenderedInstance): string {
  const starts = new Map<number, RenderedSpan[]>();
  const ends = new Map<number, RenderedSpan[]>();
  for (const span of instance.spans) {
    starts.set(span.start, [...(starts.get(span.start) ?? []), span]);
    ends.set(span.end, [...(ends.get(span.end) ?? []), span]);
  }
  const pieces: string[] = [];
  instance.tokens.forEach((token, i) => {
    const covering = instance.spans.filter((s) => s.start <= i && i < s.end);
    if (covering.length === 0) {
      pieces.push(`<span class="tok">${escapeHtml(token)}</span>`);
    } else {
      const kinds = new Set(covering.map((s) => s.kind));
      const focus = covering.some((s) => s.is_focus);
      const classes = [...kinds].sort().map((k) => spanClasses(k as "positive" | "negative", false));
      const cls = ["tok", ...classes, focus ? "span-focus" : ""].filter(Boolean).join(" ");
      pieces.push(`<span class="${cls}">${escapeHtml(token)}</span>`);
    }
    for (const span of ends.get(i + 1) ?? []) {
      const label = span.label === NEGATIVE ? "negative" : span.label;
      const url =
        span.label === NEGATIVE
          ? viewToUrl({ kind: "trigger", dataset: ds, trigger: instance.tokens.slice(span.start, span.end).join(" ").toLowerCase(), event: NEGATIVE, page: 1 })
          : viewToUrl({ kind: "event", dataset: ds, event: span.label, page: 1 });
      pieces.push(`<a class="tag tag-${span.kind}${span.is_focus ? " tag-focus" : ""}" href="${escapeHtml(url)}" data-link>${escapeHtml(label)}</a>`);
    }
  });
  const where = `${instance.doc_id} #${instance.sent_idx}`;
  return (
    `<div class="instance" data-doc="${escapeHtml(instance.doc_id)}" data-sent="${instance.sent_idx}">` +
    `<div class="instance-text">${pieces.join(" ")}</div>` +
    `<div class="instance-where">${escapeHtml(where)}</div></div>`
  );
}

type PageableView = Extract<View, { page: number }>;

function pager(current: PageableView, total: number, size: number): string {
  const pages = Math.max(1, Math.ceil(total / size));
  const parts: string[] = [];
  if (current.page > 1) {
    parts.push(link(viewToUrl({ ...current, page: current.page - 1 }), "« prev", "pager-link"));
  }
  parts.push(`<span class="pager-where">page ${current.page} of ${pages}</span>`);
  if (current.page < pages) {
    parts.push(link(viewToUrl({ ...current, page: current.page + 1 }), "next »", "pager-link"));
  }
  return `<nav class="pager">${parts.join(" ")}</nav>`;
}

function instanceList(ds: string, page: Paged<RenderedInstance>, view: PageableView): string {
  const items = page.items.map((ri) => renderInstance(ds, ri)).join("\n");
  return (
    `<div class="instances" data-total="${page.total}">` +
    `<p class="total-badge">${page.total.toLocaleString("en-US")} instances</p>` +
    `${items || '<p class="empty">no instances on this page</p>'}` +
    `${pager(view, page.total, page.size)}</div>`
  );
}

export function renderDatasetList(datasets: DatasetSummary[]): string {
  const rows = datasets
    .map((ds) => {
      const t = ds.totals;
      return (
        `<tr><td>${link(viewToUrl({ kind: "overview", dataset: ds.name }), ds.name)}</td>` +
        `<td>${escapeHtml(ds.domain)}</td>` +
        `<td class="num">${t.annotated_instances.toLocaleString("en-US")}</td>` +
        `<td class="num">${t.candidate_triggers.toLocaleString("en-US")}</td></tr>`
      );
    })
    .join("");
  return (
    `<h1>Event detection datasets</h1>` +
    `<table class="data-table"><thead><tr><th>dataset</th><th>domain</th>` +
    `<th>event mentions</th><th>candidate triggers</th></tr></thead><tbody>${rows}</tbody></table>`
  );
}

export function renderOverview(ds: string, payload: OverviewPayload): string {
  const eventBars = payload.events.map((e) => ({
    label: e.name,
    value: e.count,
    href: viewToUrl({ kind: "event", dataset: ds, event: e.name, page: 1 }),
  }));
  const topicBars = payload.topics.map((t) => ({ label: t.topic, value: t.documents }));
  const below = payload.events_below_100
    .map((name) => link(viewToUrl({ kind: "event", dataset: ds, event: name, page: 1 }), name, "chip"))
    .join(" ");
  return (
    `<h1>${escapeHtml(ds)} overview</h1>` +
    `<p class="summary" data-total-instances="${payload.total_instances}">` +
    `${payload.total_instances.toLocaleString("en-US")} event mentions across ` +
    `${payload.events.length} event types</p>` +
    `<section><h2>Event mentions per type</h2>${barChart(eventBars, 640, "event-chart")}</section>` +
    `<section><h2>Event types below 100 instances (${payload.events_below_100.length})</h2>` +
    `<p class="chips">${below || "none"}</p></section>` +
    `<section><h2>Document topics</h2>${barChart(topicBars, 640, "topic-chart")}</section>`
  );
}

export function renderEventPage(
  ds: string,
  event: string,
  triggers: TopTriggersPayload,
  instances: Paged<RenderedInstance>,
  page: number,
): string {
  const chips = triggers.triggers
    .map((t) =>
      link(
        viewToUrl({ kind: "trigger", dataset: ds, trigger: t.trigger, event: null, page: 1 }),
        `${t.trigger} (${t.count.toLocaleString("en-US")})`,
        "chip chip-trigger",
      ),
    )
    .join(" ");
  const view: PageableView = { kind: "event", dataset: ds, event, page };
  return (
    `<h1>Event: ${escapeHtml(event)}</h1>` +
    `<p>${link(viewToUrl({ kind: "overview", dataset: ds }), "back to overview")}</p>` +
    `<section><h2>Most frequent triggers</h2><p class="chips" data-testid="top-triggers">${chips || "none"}</p></section>` +
    `<section><h2>Instances</h2>${instanceList(ds, instances, view)}</section>`
  );
}

export function renderTriggerPage(
  ds: string,
  trigger: string,
  summary: TriggerSummaryPayload,
  instances: Paged<RenderedInstance>,
  selectedEvent: string | null,
  page: number,
): string {
  const filterRow = (label: string, count: number, event: string | null, cls: string) => {
    const url = viewToUrl({ kind: "trigger", dataset: ds, trigger, event, page: 1 });
    const selected = selectedEvent === event ? " filter-selected" : "";
    return (
      `<tr class="filter-row${selected}" data-event="${escapeHtml(event ?? "")}">` +
      `<td><a href="${escapeHtml(url)}" data-link class="${cls}">${escapeHtml(label)}</a></td>` +
      `<td class="num">${count.toLocaleString("en-US")}</td></tr>`
    );
  };
  const rows = [
    filterRow("all events + negatives", summary.total, null, ""),
    ...summary.events.map((e) => filterRow(e.name, e.count, e.name, "")),
    filterRow("negative trigger", summary.negative_count, NEGATIVE, "neg"),
  ].join("");
  const view: PageableView = { kind: "trigger", dataset: ds, trigger, event: selectedEvent, page };
  const filterLabel = selectedEvent === null ? "all labels" : selectedEvent === NEGATIVE ? "negative trigger" : selectedEvent;
  return (
    `<h1>Trigger: ${escapeHtml(trigger)}</h1>` +
    `<p>${link(viewToUrl({ kind: "overview", dataset: ds }), "back to overview")}</p>` +
    `<section><h2>Label distribution</h2>` +
    `<table class="data-table filters" data-testid="filters"><tbody>${rows}</tbody></table></section>` +
    `<section><h2>Instances (${escapeHtml(filterLabel)})</h2>${instanceList(ds, instances, view)}</section>`
  );
}

export function renderAnnotateForm(ds: string, tauNeg: number | null, tauEvent: number | null, text = ""): string {
  const neg = tauNeg === null ? "" : String(tauNeg);
  const ev = tauEvent === null ? "" : String(tauEvent);
  const disabled = text.trim().length === 0 ? " disabled" : "";
  return (
    `<h1>Annotate with the ${escapeHtml(ds)} lexicon</h1>` +
    `<form id="annotate-form" data-dataset="${escapeHtml(ds)}">` +
    `<textarea id="annotate-text" rows="5" placeholder="Type a sentence or an article...">${escapeHtml(text)}</textarea>` +
    `<div class="controls">` +
    `<label>positive-share floor <input id="tau-neg" type="number" min="0" max="1" step="0.05" value="${neg}" placeholder="0.5"></label>` +
    `<label>confidence floor <input id="tau-event" type="number" min="0" max="1" step="0.05" value="${ev}" placeholder="0.5"></label>` +
    `<button id="annotate-submit" type="submit"${disabled}>annotate</button>` +
    `</div></form><div id="annotate-result"></div>`
  );
}

export function renderAnnotateResult(payload: AnnotatePayload): string {
  if (payload.sentences.length === 0) {
    return '<p class="empty">nothing to annotate</p>';
  }
  const sentences = payload.sentences.map((sentence) => {
    const bySpanStart = new Map(sentence.spans.map((s) => [s.start, s]));
    const pieces: string[] = [];
    for (let i = 0; i < sentence.tokens.length; i++) {
      const span = bySpanStart.get(i);
      if (span === undefined) {
        pieces.push(`<span class="tok">${escapeHtml(sentence.tokens[i])}</span>`);
        continue;
      }
      const surface = sentence.tokens.slice(span.start, span.end).join(" ");
      pieces.push(
        `<span class="tok span-positive span-focus">` +
          `<a href="${escapeHtml(span.links.trigger_url)}" data-link class="pred-trigger">${escapeHtml(surface)}</a></span>` +
          `<a class="tag tag-positive" href="${escapeHtml(span.links.event_url)}" data-link>` +
          `${escapeHtml(span.event)} ${(span.confidence * 100).toFixed(1)}%</a>`,
      );
      i = span.end - 1;
    }
    return `<div class="instance"><div class="instance-text">${pieces.join(" ")}</div></div>`;
  });
  return `<h2>Predicted events</h2>${sentences.join("\n")}`;
}

export function renderError(message: string): string {
  return `<div class="error"><h1>Something went wrong</h1><p>${escapeHtml(message)}</p>` +
    `<p><a href="/" data-link>back to datasets</a></p></div>`;
}
