import { describe, expect, it } from "vitest";

import { validateGraphDoc, validatePayload } from "../src/types";
import fixture from "./fixtures/task49_graph.json";

const tiny = () => ({
  task_id: "t",
  mode: "grid_only",
  trajectory_count: 1,
  nodes: [
    { key: "a", visits: 1, klass: "input", grid: [[0]] },
    { key: "b", visits: 1, klass: "answer", grid: [[6]] },
  ],
  edges: [{ src: "a", dst: "b", op: "paint(6)", traversals: 1 }],
});

describe("validateGraphDoc", () => {
  it("accepts the real pipeline export", () => {
    expect(validatePayload(fixture)).toBeNull();
  });

  it("accepts a minimal well-formed document", () => {
    expect(validateGraphDoc(tiny())).toBeNull();
  });

  it("rejects non-objects and empty graphs", () => {
    expect(validateGraphDoc(null)).toMatch(/object/);
    expect(validateGraphDoc([])).toMatch(/task_id/);
    const doc = tiny();
    doc.nodes = [];
    doc.edges = [];
    expect(validateGraphDoc(doc)).toMatch(/no nodes/);
  });

  it("rejects bad node classes, grids, and duplicate keys", () => {
    let doc = tiny();
    doc.nodes[0].klass = "cerulean";
    expect(validateGraphDoc(doc)).toMatch(/bad klass/);

    doc = tiny();
    (doc.nodes[0] as { grid: unknown }).grid = [[11]];
    expect(validateGraphDoc(doc)).toMatch(/bad grid/);

    doc = tiny();
    doc.nodes[1].key = "a";
    expect(validateGraphDoc(doc)).toMatch(/duplicate key/);
  });

  it("rejects dangling edges and bad traversal counts", () => {
    let doc = tiny();
    doc.edges[0].dst = "missing";
    expect(validateGraphDoc(doc)).toMatch(/unknown dst/);

    doc = tiny();
    doc.edges[0].traversals = 0;
    expect(validateGraphDoc(doc)).toMatch(/bad traversals/);
  });

  it("validates the payload envelope", () => {
    expect(validatePayload({ graph: tiny() })).toMatch(/layout_seed/);
    expect(validatePayload({ layout_seed: 3, graph: tiny() })).toBeNull();
  });
});
