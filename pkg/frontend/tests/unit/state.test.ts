import { describe, expect, it } from "vitest";
import { annotateSubmitDisabled, parseLocation, parseUrl, viewToUrl, type View } from "../../src/state.js";

describe("URL <-> view state round-trips", () => {
  const cases: { url: string; view: View }[] = [
    { url: "/", view: { kind: "home" } },
    { url: "/d/maven", view: { kind: "overview", dataset: "maven" } },
    { url: "/d/maven/event/Catastrophe", view: { kind: "event", dataset: "maven", event: "Catastrophe", page: 1 } },
    { url: "/d/maven/event/Self%20Motion?page=3", view: { kind: "event", dataset: "maven", event: "Self Motion", page: 3 } },
    { url: "/d/maven/trigger/storm", view: { kind: "trigger", dataset: "maven", trigger: "storm", event: null, page: 1 } },
    { url: "/d/maven/trigger/storm?event=NEGATIVE", view: { kind: "trigger", dataset: "maven", trigger: "storm", event: "NEGATIVE", page: 1 } },
    { url: "/d/maven/trigger/storm?event=Attack&page=2", view: { kind: "trigger", dataset: "maven", trigger: "storm", event: "Attack", page: 2 } },
    { url: "/d/maven/trigger/set%20up", view: { kind: "trigger", dataset: "maven", trigger: "set up", event: null, page: 1 } },
    { url: "/d/maven/annotate", view: { kind: "annotate", dataset: "maven", tauNeg: null, tauEvent: null } },
    { url: "/d/maven/annotate?tau_neg=0.6&tau_event=0.5", view: { kind: "annotate", dataset: "maven", tauNeg: 0.6, tauEvent: 0.5 } },
  ];

  it.each(cases)("parses $url", ({ url, view }) => {
    expect(parseUrl(url)).toEqual(view);
  });

  it.each(cases)("serializes back to $url", ({ url, view }) => {
    expect(viewToUrl(view)).toBe(url);
  });

  it.each(cases)("deep link survives a reload for $url", ({ url }) => {
    const first = parseUrl(url);
    const second = parseUrl(viewToUrl(first));
    expect(second).toEqual(first);
  });
});

describe("parsing tolerance", () => {
  it("unknown paths fall back to home", () => {
    expect(parseLocation("/somewhere/else")).toEqual({ kind: "home" });
    expect(parseLocation("/d")).toEqual({ kind: "home" });
  });

  it("unknown dataset subpage falls back to overview", () => {
    expect(parseLocation("/d/maven/bogus")).toEqual({ kind: "overview", dataset: "maven" });
  });

  it("bad page numbers fall back to 1", () => {
    expect(parseUrl("/d/x/event/E?page=-4")).toEqual({ kind: "event", dataset: "x", event: "E", page: 1 });
    expect(parseUrl("/d/x/event/E?page=two")).toEqual({ kind: "event", dataset: "x", event: "E", page: 1 });
  });

  it("out-of-range thresholds are dropped", () => {
    expect(parseUrl("/d/x/annotate?tau_neg=7")).toEqual({ kind: "annotate", dataset: "x", tauNeg: null, tauEvent: null });
  });
});

describe("annotate submit guard", () => {
  it("disabled for empty and whitespace-only input", () => {
    expect(annotateSubmitDisabled("")).toBe(true);
    expect(annotateSubmitDisabled("   \n\t")).toBe(true);
  });

  it("enabled for real text", () => {
    expect(annotateSubmitDisabled("The storm hits New York.")).toBe(false);
  });
});
