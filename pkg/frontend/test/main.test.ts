import { beforeEach, describe, expect, it } from "vitest";

import { boot, parseFragment } from "../src/main";
import fixture from "./fixtures/task49_graph.json";

function page(dataText: string | null): void {
  document.body.innerHTML = "";
  const root = document.createElement("div");
  root.id = "viewer-root";
  document.body.appendChild(root);
  if (dataText !== null) {
    const script = document.createElement("script");
    script.id = "graph-data";
    script.type = "application/json";
    script.textContent = dataText;
    document.body.appendChild(script);
  }
}

describe("parseFragment", () => {
  it("reads node and zoom parameters", () => {
    expect(parseFragment("#node=abc&zoom=1.5")).toEqual({ node: "abc", zoom: 1.5 });
    expect(parseFragment("zoom=2")).toEqual({ node: null, zoom: 2 });
    expect(parseFragment("")).toEqual({ node: null, zoom: null });
    expect(parseFragment("#zoom=-1&junk")).toEqual({ node: null, zoom: null });
  });
});

describe("boot", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("renders a valid embedded payload", () => {
    page(JSON.stringify(fixture));
    boot(document);
    expect(document.querySelectorAll("circle.viewer-node").length).toBe(
      fixture.graph.nodes.length,
    );
    expect(document.querySelector(".viewer-error")).toBeNull();
  });

  it("shows a validation message for malformed JSON without crashing", () => {
    page("{definitely not json");
    boot(document);
    const error = document.querySelector(".viewer-error");
    expect(error).not.toBeNull();
    expect(error!.textContent).toMatch(/not valid JSON/);
    expect(document.querySelectorAll("circle").length).toBe(0);
  });

  it("shows a validation message for schema violations", () => {
    page(JSON.stringify({ layout_seed: 1, graph: { task_id: "x" } }));
    boot(document);
    expect(document.querySelector(".viewer-error")!.textContent).toMatch(/missing mode/);
  });

  it("handles a page with no data element", () => {
    page(null);
    boot(document);
    expect(document.querySelector(".viewer-error")!.textContent).toMatch(
      /no embedded graph data/,
    );
  });

  it("applies fragment parameters", () => {
    page(JSON.stringify(fixture));
    const key = fixture.graph.nodes[3].key;
    boot(document, `#node=${key}&zoom=2`);
    expect(document.querySelector(".viewer-panel")).not.toBeNull();
    expect(document.querySelector("g.viewport")!.getAttribute("transform")).toContain(
      "scale(2)",
    );
  });
});
