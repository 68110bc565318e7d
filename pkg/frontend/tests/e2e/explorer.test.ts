// End-to-end: a real edx API server over the fixture snapshot, consumed
// through the same client + page controller the browser app uses.

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import net from "node:net";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../../src/api.js";
import { loadPageHtml } from "../../src/pages.js";
import { renderAnnotateResult } from "../../src/render.js";
import { parseUrl, viewToUrl } from "../../src/state.js";

const PYTHON = process.env.EDX_PYTHON ?? "python3";
const REPO_ROOT = resolve(__dirname, "..", "..", "..");
const FRONTEND_DIST = resolve(REPO_ROOT, "frontend", "dist");

let workdir: string;
let server: ChildProcess | null = null;
let base: string;
let client: ApiClient;

function freePort(): Promise<number> {
  return new Promise((resolvePort, reject) => {
    const probe = net.createServer();
    probe.on("error", reject);
    probe.listen(0, "127.0.0.1", () => {
      const port = (probe.address() as net.AddressInfo).port;
      probe.close(() => resolvePort(port));
    });
  });
}

async function waitForReady(url: string, budgetMs = 30_000): Promise<void> {
  const deadline = Date.now() + budgetMs;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(url);
      if (response.ok) return;
    } catch (error) {
      lastError = error;
    }
    await new Promise((r) => setTimeout(r, 150));
  }
  throw new Error(`server never became ready at ${url}: ${lastError}`);
}

function chartValues(html: string, testId: string): number[] {
  const chart = html.split(`data-testid="${testId}"`)[1]?.split("</svg>")[0] ?? "";
  return [...chart.matchAll(/data-value="(\d+)"/g)].map((m) => Number(m[1]));
}

beforeAll(async () => {
  workdir = mkdtempSync(join(tmpdir(), "edx-e2e-"));
  const unified = join(workdir, "demo.jsonl");
  const snapshot = join(workdir, "demo.snapshot.json");
  execFileSync(PYTHON, [join(REPO_ROOT, "scripts", "make_demo_corpus.py"), unified], { stdio: "inherit" });
  execFileSync(PYTHON, ["-m", "edx.cli", "ingest", "--format", "unified", "--input", unified, "--out", snapshot],
    { stdio: "inherit" });

  const port = await freePort();
  base = `http://127.0.0.1:${port}`;
  const config = join(workdir, "edx.json");
  writeFileSync(config, JSON.stringify({
    listen: `127.0.0.1:${port}`,
    snapshots: [snapshot],
    cors_origins: [],
    static_dir: FRONTEND_DIST,
  }));
  server = spawn(PYTHON, ["-m", "edx.cli", "serve", "--config", config], { stdio: "ignore" });
  await waitForReady(`${base}/api/v1/datasets`);
  client = new ApiClient(base);
}, 60_000);

afterAll(() => {
  server?.kill("SIGTERM");
  rmSync(workdir, { recursive: true, force: true });
});

describe("overview page", () => {
  it("chart totals match the /overview payload exactly", async () => {
    const payload = await client.overview("demo");
    const html = await loadPageHtml(client, { kind: "overview", dataset: "demo" });
    expect(html).toContain(`data-total-instances="${payload.total_instances}"`);
    const bars = chartValues(html, "event-chart");
    expect(bars).toEqual(payload.events.map((e) => e.count));
    expect(bars.reduce((a, b) => a + b, 0)).toBe(payload.total_instances);
    const topicBars = chartValues(html, "topic-chart");
    expect(topicBars).toEqual(payload.topics.map((t) => t.documents));
  });

  it("lists below-100 events as links into the event explorer", async () => {
    const payload = await client.overview("demo");
    const html = await loadPageHtml(client, { kind: "overview", dataset: "demo" });
    for (const name of payload.events_below_100) {
      expect(html).toContain(`href="${viewToUrl({ kind: "event", dataset: "demo", event: name, page: 1 })}"`);
    }
  });
});

describe("event page", () => {
  it("shows exactly the top-10 triggers when more exist", async () => {
    const summary = await client.triggerSummary("demo", "storm");
    expect(summary.total).toBe(1718); // sanity: fixture is the golden table
    const distribution = await client.overview("demo");
    const motion = distribution.events.find((e) => e.name === "Motion");
    expect(motion).toBeDefined();
    const html = await loadPageHtml(client, { kind: "event", dataset: "demo", event: "Motion", page: 1 });
    const chips = html.match(/chip chip-trigger/g) ?? [];
    expect(chips).toHaveLength(10);
  });

  it("carries the instance total from the API", async () => {
    const instances = await client.eventInstances("demo", "Catastrophe", 1, 20);
    const html = await loadPageHtml(client, { kind: "event", dataset: "demo", event: "Catastrophe", page: 1 });
    expect(html).toContain(`data-total="${instances.total}"`);
    expect(instances.total).toBe(925 + 174);
  });
});

describe("trigger page filters", () => {
  it("toggles between all-events and single-event instance sets with correct totals", async () => {
    const all = await loadPageHtml(client, { kind: "trigger", dataset: "demo", trigger: "storm", event: null, page: 1 });
    expect(all).toContain('data-total="1718"');
    const attack = await loadPageHtml(client, { kind: "trigger", dataset: "demo", trigger: "storm", event: "Attack", page: 1 });
    expect(attack).toContain('data-total="14"');
    const negative = await loadPageHtml(client, { kind: "trigger", dataset: "demo", trigger: "storm", event: "NEGATIVE", page: 1 });
    expect(negative).toContain('data-total="771"');

    // the filter rows themselves link to the other view
    expect(attack).toContain('href="/d/demo/trigger/storm"');
    expect(all).toContain('href="/d/demo/trigger/storm?event=Attack"');
    const selected = attack.split("<tr").find((row) => row.includes('data-event="Attack"'));
    expect(selected).toContain("filter-selected");
  });

  it("renders focus spans red-class and negatives blue-class", async () => {
    const negative = await loadPageHtml(client, { kind: "trigger", dataset: "demo", trigger: "storm", event: "NEGATIVE", page: 1 });
    expect(negative).toContain("span-negative span-focus");
    const attack = await loadPageHtml(client, { kind: "trigger", dataset: "demo", trigger: "storm", event: "Attack", page: 1 });
    expect(attack).toContain("span-positive span-focus");
  });
});

describe("annotation demo", () => {
  it("links predictions to the trigger and event explorers", async () => {
    const payload = await client.annotate("demo", "The storm hits New York.");
    const html = renderAnnotateResult(payload);
    expect(html).toContain('href="/d/demo/trigger/storm"');
    expect(html).toContain('href="/d/demo/event/Catastrophe"');
  });

  it("honors threshold overrides", async () => {
    const strict = await client.annotate("demo", "The storm hits New York.", 0.6);
    expect(strict.sentences[0].spans).toEqual([]);
    const lenient = await client.annotate("demo", "The storm hits New York.", 0.5);
    expect(lenient.sentences[0].spans).toHaveLength(1);
    expect(lenient.sentences[0].spans[0].event).toBe("Catastrophe");
  });
});

describe("deep links", () => {
  const urls = [
    "/d/demo",
    "/d/demo/event/Motion?page=2",
    "/d/demo/trigger/storm?event=NEGATIVE",
    "/d/demo/trigger/storm?event=Attack&page=1",
    "/d/demo/annotate?tau_neg=0.6",
  ];

  it.each(urls)("reloading %s reproduces the identical view", async (url) => {
    const view = parseUrl(url);
    expect(parseUrl(viewToUrl(view))).toEqual(view);
    const first = await loadPageHtml(client, view);
    const second = await loadPageHtml(client, parseUrl(url)); // fresh parse = reload
    expect(second).toBe(first);
  });

  it("the service serves the SPA shell for deep links (history-API fallback)", async () => {
    const response = await fetch(`${base}/d/demo/trigger/storm?event=NEGATIVE`);
    expect(response.status).toBe(200);
    expect(response.headers.get("content-type")).toContain("text/html");
    expect(await response.text()).toContain('id="app"');
  });

  it("still returns JSON 404s for unknown API paths", async () => {
    const response = await fetch(`${base}/api/v1/datasets/unknown/overview`);
    expect(response.status).toBe(404);
    expect((await response.json()).code).toBe("not_found");
  });

  it("serves the compiled assets", async () => {
    const js = await fetch(`${base}/assets/app.js`);
    expect(js.status).toBe(200);
    const css = await fetch(`${base}/styles.css`);
    expect(css.status).toBe(200);
  });
});
