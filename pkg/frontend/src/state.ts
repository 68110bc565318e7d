// URL-addressable view state. Every view round-trips through its URL, so
// deep links reproduce the exact view after a reload.

export type View =
  | { kind: "home" }
  | { kind: "overview"; dataset: string }
  | { kind: "event"; dataset: string; event: string; page: number }
  | { kind: "trigger"; dataset: string; trigger: string; event: string | null; page: number }
  | { kind: "annotate"; dataset: string; tauNeg: number | null; tauEvent: number | null };

const DEFAULT_PAGE = 1;

function pageFrom(params: URLSearchParams): number {
  const raw = Number(params.get("page") ?? DEFAULT_PAGE);
  return Number.isInteger(raw) && raw >= 1 ? raw : DEFAULT_PAGE;
}

function tauFrom(params: URLSearchParams, key: string): number | null {
  const raw = params.get(key);
  if (raw === null) return null;
  const value = Number(raw);
  return Number.isFinite(value) && value >= 0 && value <= 1 ? value : null;
}

export function parseLocation(pathname: string, search = ""): View {
  const params = new URLSearchParams(search.startsWith("?") ? search.slice(1) : search);
  const parts = pathname.split("/").filter((p) => p.length > 0).map(decodeURIComponent);
  if (parts.length === 0) return { kind: "home" };
  if (parts[0] !== "d" || parts.length < 2) return { kind: "home" };
  const dataset = parts[1];
  if (parts.length === 2) return { kind: "overview", dataset };
  switch (parts[2]) {
    case "event":
      if (parts.length >= 4) {
        return { kind: "event", dataset, event: parts[3], page: pageFrom(params) };
      }
      break;
    case "trigger":
      if (parts.length >= 4) {
        return {
          kind: "trigger",
          dataset,
          trigger: parts[3],
          event: params.get("event"),
          page: pageFrom(params),
        };
      }
      break;
    case "annotate":
      return {
        kind: "annotate",
        dataset,
        tauNeg: tauFrom(params, "tau_neg"),
        tauEvent: tauFrom(params, "tau_event"),
      };
  }
  return { kind: "overview", dataset };
}

export function viewToUrl(view: View): string {
  switch (view.kind) {
    case "home":
      return "/";
    case "overview":
      return `/d/${encodeURIComponent(view.dataset)}`;
    case "event": {
      const base = `/d/${encodeURIComponent(view.dataset)}/event/${encodeURIComponent(view.event)}`;
      return view.page > 1 ? `${base}?page=${view.page}` : base;
    }
    case "trigger": {
      const base = `/d/${encodeURIComponent(view.dataset)}/trigger/${encodeURIComponent(view.trigger)}`;
      const params = new URLSearchParams();
      if (view.event !== null) params.set("event", view.event);
      if (view.page > 1) params.set("page", String(view.page));
      const query = params.toString();
      return query ? `${base}?${query}` : base;
    }
    case "annotate": {
      const base = `/d/${encodeURIComponent(view.dataset)}/annotate`;
      const params = new URLSearchParams();
      if (view.tauNeg !== null) params.set("tau_neg", String(view.tauNeg));
      if (view.tauEvent !== null) params.set("tau_event", String(view.tauEvent));
      const query = params.toString();
      return query ? `${base}?${query}` : base;
    }
  }
}

export function parseUrl(url: string): View {
  const q = url.indexOf("?");
  return q === -1 ? parseLocation(url) : parseLocation(url.slice(0, q), url.slice(q));
}

// Submit stays disabled until the annotation input has visible content:
// empty input must trigger no request.
export function annotateSubmitDisabled(text: string): boolean {
  return text.trim().length === 0;
}
