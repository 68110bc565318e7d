// Browser bootstrap: history-based routing over the shared page controller.
// Navigation aborts any in-flight requests before starting the next view.

import { ApiClient, ApiError } from "./api.js";
import { loadPageHtml } from "./pages.js";
import { renderAnnotateResult, renderError } from "./render.js";
import { annotateSubmitDisabled, parseUrl, viewToUrl, type View } from "./state.js";

const client = new ApiClient("");
const root = document.getElementById("app") as HTMLElement;
let inflight: AbortController | null = null;

async function show(view: View, push: boolean): Promise<void> {
  inflight?.abort();
  const controller = new AbortController();
  inflight = controller;
  const url = viewToUrl(view);
  if (push) {
    history.pushState(null, "", url);
  }
  root.setAttribute("aria-busy", "true");
  try {
    const html = await loadPageHtml(client, view, controller.signal);
    if (controller.signal.aborted) return;
    root.innerHTML = html;
    if (view.kind === "annotate") {
      wireAnnotateForm(view);
    }
    window.scrollTo(0, 0);
  } catch (error) {
    if (controller.signal.aborted) return;
    const message = error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
    root.innerHTML = renderError(message);
  } finally {
    root.removeAttribute("aria-busy");
  }
}

function wireAnnotateForm(view: View & { kind: "annotate" }): void {
  const form = document.getElementById("annotate-form") as HTMLFormElement;
  const text = document.getElementById("annotate-text") as HTMLTextAreaElement;
  const tauNeg = document.getElementById("tau-neg") as HTMLInputElement;
  const tauEvent = document.getElementById("tau-event") as HTMLInputElement;
  const submit = document.getElementById("annotate-submit") as HTMLButtonElement;
  const result = document.getElementById("annotate-result") as HTMLElement;

  text.addEventListener("input", () => {
    submit.disabled = annotateSubmitDisabled(text.value);
  });
  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    if (annotateSubmitDisabled(text.value)) return;
    submit.disabled = true;
    try {
      const payload = await client.annotate(
        view.dataset,
        text.value,
        tauNeg.value === "" ? undefined : Number(tauNeg.value),
        tauEvent.value === "" ? undefined : Number(tauEvent.value),
      );
      result.innerHTML = renderAnnotateResult(payload);
    } catch (error) {
      const message = error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
      result.innerHTML = renderError(message);
    } finally {
      submit.disabled = annotateSubmitDisabled(text.value);
    }
  });
}

document.addEventListener("click", (event) => {
  const anchor = (event.target as HTMLElement).closest("a[data-link]");
  if (!anchor) return;
  const href = anchor.getAttribute("href");
  if (!href || !href.startsWith("/")) return;
  event.preventDefault();
  void show(parseUrl(href), true);
});

window.addEventListener("popstate", () => {
  void show(parseUrl(location.pathname + location.search), false);
});

void show(parseUrl(location.pathname + location.search), false);
