import { beforeEach, describe, expect, it } from "vitest";

import { KLASS_COLORS } from "../src/colors";
import { renderError, renderGraph } from "../src/render";
import type { GraphDoc } from "../src/types";
import fixture from "./fixtures/task49_graph.json";

const graph = fixture.graph as GraphDoc;

function freshRoot(): HTMLElement {
  document.body.innerHTML = "";
  const root = document.createElement("div");
  root.id = "viewer-root";
  document.body.appendChild(root);
  return root;
}

describe("renderGraph on the crop-task export", () => {
  let root: HTMLElement;

  beforeEach(() => {
    root = freshRoot();
  });

  it("draws exactly one circle per node and one line per edge", () => {
    renderGraph(root, graph, { seed: fixture.layout_seed });
    expect(root.querySelectorAll("circle.viewer-node").length).toBe(graph.nodes.length);
    expect(root.querySelectorAll("line.viewer-edge").length).toBe(graph.edges.length);
  });

  it("fills nodes with the class colors of the pipeline", () => {
    renderGraph(root, graph, { seed: fixture.layout_seed });
    for (const circle of root.querySelectorAll<SVGCircleElement>("circle.viewer-node")) {
      const klass = circle.dataset.klass!;
      expect(circle.getAttribute("fill")).toBe(KLASS_COLORS[klass]);
    }
    const blues = root.querySelectorAll(`circle[fill="${KLASS_COLORS.input}"]`);
    const greens = root.querySelectorAll(`circle[fill="${KLASS_COLORS.answer}"]`);
    const reds = root.querySelectorAll(`circle[fill="${KLASS_COLORS.wrong_submission}"]`);
    expect(blues.length).toBe(1);
    expect(greens.length).toBe(1);
    expect(reds.length).toBe(1);
  });

  it("clicking the green node reveals the 3x3 magenta grid", () => {
    const result = renderGraph(root, graph, { seed: fixture.layout_seed });
    const green = root.querySelector<SVGCircleElement>(
      `circle[fill="${KLASS_COLORS.answer}"]`,
    )!;
    green.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    const panel = result.panel();
    expect(panel).not.toBeNull();
    const cells = panel!.querySelectorAll("td");
    expect(cells.length).toBe(9);
    for (const cell of cells) {
      expect(cell.dataset.cell).toBe("6");
      expect(cell.style.backgroundColor).toBe("#f012be");
    }
    expect(panel!.textContent).toContain("answer");
  });

  it("clicking empty space dismisses the panel", () => {
    const result = renderGraph(root, graph, { seed: fixture.layout_seed });
    result.selectNode(graph.nodes[0].key);
    expect(result.panel()).not.toBeNull();
    result.svg.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(result.panel()).toBeNull();
  });

  it("selecting an unknown node id is a no-op", () => {
    const result = renderGraph(root, graph, { seed: fixture.layout_seed });
    result.selectNode("no-such-node");
    expect(result.panel()).toBeNull();
  });

  it("panel contents match the JSON grid payload for every node", () => {
    const result = renderGraph(root, graph, { seed: fixture.layout_seed });
    for (const node of graph.nodes) {
      result.selectNode(node.key);
      const panel = result.panel()!;
      const rows = panel.querySelectorAll("tr");
      expect(rows.length).toBe(node.grid.length);
      const flat = node.grid.flat().map(String);
      const got = [...panel.querySelectorAll("td")].map((td) => td.dataset.cell);
      expect(got).toEqual(flat);
    }
  });

  it("never mutates the embedded document", () => {
    const before = JSON.stringify(graph);
    const result = renderGraph(root, graph, { seed: fixture.layout_seed });
    result.selectNode(graph.nodes[2].key);
    result.setZoom(2.5);
    expect(JSON.stringify(graph)).toBe(before);
  });

  it("honors initial node and zoom options", () => {
    const result = renderGraph(root, graph, {
      seed: fixture.layout_seed,
      initialNode: graph.nodes[1].key,
      initialZoom: 2,
    });
    expect(result.panel()).not.toBeNull();
    expect(result.zoom()).toBe(2);
    const viewport = root.querySelector("g.viewport")!;
    expect(viewport.getAttribute("transform")).toContain("scale(2)");
  });

  it("node radii grow with visit counts", () => {
    renderGraph(root, graph, { seed: fixture.layout_seed });
    const byKey = new Map(
      [...root.querySelectorAll<SVGCircleElement>("circle.viewer-node")].map((c) => [
        c.dataset.key!,
        Number(c.getAttribute("r")),
      ]),
    );
    const sorted = [...graph.nodes].sort((a, b) => a.visits - b.visits);
    const least = byKey.get(sorted[0].key)!;
    const most = byKey.get(sorted[sorted.length - 1].key)!;
    expect(most).toBeGreaterThan(least);
  });
});

describe("renderError", () => {
  it("shows an in-page message", () => {
    const root = freshRoot();
    renderError(root, "missing nodes array");
    const div = root.querySelector(".viewer-error");
    expect(div).not.toBeNull();
    expect(div!.textContent).toContain("missing nodes array");
  });
});
