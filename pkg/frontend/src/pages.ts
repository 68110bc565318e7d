// View controller: fetch what a view needs, then render it. The app shell
// and the end-to-end tests share this exact code path, so "reload a deep
// link" and "test the page" are the same operation.

import { ApiClient } from "./api.js";
import {
  renderAnnotateForm,
  renderDatasetList,
  renderEventPage,
  renderOverview,
  renderTriggerPage,
} from "./render.js";
import type { View } from "./state.js";

export const PAGE_SIZE = 20;

export async function loadPageHtml(client: ApiClient, view: View, signal?: AbortSignal): Promise<string> {
  switch (view.kind) {
    case "home": {
      const datasets = await client.datasets(signal);
      return renderDatasetList(datasets);
    }
    case "overview": {
      const payload = await client.overview(view.dataset, signal);
      return renderOverview(view.dataset, payload);
    }
    case "event": {
      const [triggers, instances] = await Promise.all([
        client.topTriggers(view.dataset, view.event, 10, signal),
        client.eventInstances(view.dataset, view.event, view.page, PAGE_SIZE, signal),
      ]);
      return renderEventPage(view.dataset, view.event, triggers, instances, view.page);
    }
    case "trigger": {
      const [summary, instances] = await Promise.all([
        client.triggerSummary(view.dataset, view.trigger, signal),
        client.triggerInstances(view.dataset, view.trigger, view.event, view.page, PAGE_SIZE, signal),
      ]);
      return renderTriggerPage(view.dataset, view.trigger, summary, instances, view.event, view.page);
    }
    case "annotate":
      return renderAnnotateForm(view.dataset, view.tauNeg, view.tauEvent);
  }
}
