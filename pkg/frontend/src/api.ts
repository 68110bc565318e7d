// Thin typed client for the /api/v1 backend. Every page consumes the API
// exclusively; the baseUrl is empty in the browser (same origin) and set
// explicitly by tests.

import type {
  AnnotatePayload,
  ApiErrorPayload,
  DatasetSummary,
  EventSummary,
  OverviewPayload,
  Paged,
  RenderedInstance,
  TopTriggersPayload,
  TriggerSummaryPayload,
} from "./types.js";

export class ApiError extends Error {
  code: string;
  status: number;

  constructor(status: number, payload: ApiErrorPayload) {
    super(payload.message);
    this.status = status;
    this.code = payload.code;
  }
}

export class ApiClient {
  constructor(private baseUrl = "") {}

  private async get<T>(path: string, signal?: AbortSignal): Promise<T> {
    const response = await fetch(this.baseUrl + path, { signal });
    if (!response.ok) {
      throw new ApiError(response.status, (await response.json()) as ApiErrorPayload);
    }
    return (await response.json()) as T;
  }

  datasets(signal?: AbortSignal): Promise<DatasetSummary[]> {
    return this.get("/api/v1/datasets", signal);
  }

  overview(ds: string, signal?: AbortSignal): Promise<OverviewPayload> {
    return this.get(`/api/v1/datasets/${encodeURIComponent(ds)}/overview`, signal);
  }

  events(ds: string, sort = "count", page = 1, size = 200, signal?: AbortSignal): Promise<Paged<EventSummary>> {
    return this.get(
      `/api/v1/datasets/${encodeURIComponent(ds)}/events?sort=${sort}&page=${page}&size=${size}`,
      signal,
    );
  }

  topTriggers(ds: string, event: string, limit = 10, signal?: AbortSignal): Promise<TopTriggersPayload> {
    return this.get(
      `/api/v1/datasets/${encodeURIComponent(ds)}/events/${encodeURIComponent(event)}/triggers?limit=${limit}`,
      signal,
    );
  }

  eventInstances(ds: string, event: string, page = 1, size = 20, signal?: AbortSignal): Promise<Paged<RenderedInstance>> {
    return this.get(
      `/api/v1/datasets/${encodeURIComponent(ds)}/events/${encodeURIComponent(event)}/instances?page=${page}&size=${size}`,
      signal,
    );
  }

  triggerSummary(ds: string, trigger: string, signal?: AbortSignal): Promise<TriggerSummaryPayload> {
    return this.get(
      `/api/v1/datasets/${encodeURIComponent(ds)}/triggers/${encodeURIComponent(trigger)}`,
      signal,
    );
  }

  triggerInstances(
    ds: string,
    trigger: string,
    event: string | null,
    page = 1,
    size = 20,
    signal?: AbortSignal,
  ): Promise<Paged<RenderedInstance>> {
    const filter = event === null ? "" : `event=${encodeURIComponent(event)}&`;
    return this.get(
      `/api/v1/datasets/${encodeURIComponent(ds)}/triggers/${encodeURIComponent(trigger)}/instances?${filter}page=${page}&size=${size}`,
      signal,
    );
  }

  async annotate(ds: string, text: string, tauNeg?: number, tauEvent?: number, signal?: AbortSignal): Promise<AnnotatePayload> {
    const body: Record<string, unknown> = { text, dataset: ds };
    if (tauNeg !== undefined) body.tau_neg = tauNeg;
    if (tauEvent !== undefined) body.tau_event = tauEvent;
    const response = await fetch(`${this.baseUrl}/api/v1/annotate`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
    if (!response.ok) {
      throw new ApiError(response.status, (await response.json()) as ApiErrorPayload);
    }
    return (await response.json()) as AnnotatePayload;
  }
}
