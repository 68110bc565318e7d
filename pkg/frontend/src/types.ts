// API payload shapes, mirroring docs/api.md. The UI renders these numbers
// verbatim; it never recomputes statistics client-side.

export interface DatasetTotals {
  candidate_triggers: number;
  positive_triggers: number;
  annotated_instances: number;
  negative_instances: number;
}

export interface DatasetSummary {
  name: string;
  domain: string;
  totals: DatasetTotals;
}

export interface TriggerCount {
  trigger: string;
  count: number;
}

export interface OverviewEvent {
  name: string;
  type_id: number;
  count: number;
  triggers: TriggerCount[];
}

export interface OverviewPayload {
  corpus: string;
  total_instances: number;
  events: OverviewEvent[];
  events_below_100: string[];
  topics: { topic: string; documents: number }[];
}

export interface EventSummary {
  name: string;
  type_id: number;
  count: number;
  distinct_triggers: number;
}

export interface TopTriggersPayload {
  event: string;
  triggers: TriggerCount[];
}

export interface RenderedSpan {
  start: number;
  end: number;
  label: string;
  kind: "positive" | "negative";
  is_focus: boolean;
}

export interface RenderedInstance {
  doc_id: string;
  sent_idx: number;
  tokens: string[];
  spans: RenderedSpan[];
}

export interface Paged<T> {
  items: T[];
  total: number;
  page: number;
  size: number;
}

export interface TriggerSummaryPayload {
  trigger: string;
  events: { name: string; count: number }[];
  negative_count: number;
  positive_count: number;
  total: number;
}

export interface AnnotatedSpan {
  start: number;
  end: number;
  event: string;
  confidence: number;
  trigger: string;
  links: { trigger_url: string; event_url: string };
}

export interface AnnotatePayload {
  dataset: string;
  sentences: { tokens: string[]; spans: AnnotatedSpan[] }[];
}

export interface ApiErrorPayload {
  code: "not_found" | "invalid_argument" | "internal";
  message: string;
  detail?: unknown;
}
