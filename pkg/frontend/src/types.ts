/** Graph JSON schema produced by the analysis pipeline (consumed verbatim). */

export interface GraphNode {
  key: string;
  visits: number;
  klass: string;
  grid: number[][];
}

export interface GraphEdge {
  src: string;
  dst: string;
  op: string;
  traversals: number;
}

export interface GraphDoc {
  task_id: string;
  mode: string;
  trajectory_count: number;
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface ViewerPayload {
  layout_seed: number;
  graph: GraphDoc;
}

export const NODE_CLASSES = ["input", "answer", "wrong_submission", "other"] as const;

function isGrid(value: unknown): value is number[][] {
  return (
    Array.isArray(value) &&
    value.length > 0 &&
    value.every(
      (row) =>
        Array.isArray(row) &&
        row.length > 0 &&
        row.every((c) => Number.isInteger(c) && c >= 0 && c <= 9),
    )
  );
}

/** Returns an error message for a malformed document, or null when valid. */
export function validateGraphDoc(value: unknown): string | null {
  if (typeof value !== "object" || value === null) {
    return "graph document must be an object";
  }
  const doc = value as Record<string, unknown>;
  if (typeof doc.task_id !== "string") return "missing task_id";
  if (typeof doc.mode !== "string") return "missing mode";
  if (!Array.isArray(doc.nodes)) return "missing nodes array";
  if (!Array.isArray(doc.edges)) return "missing edges array";
  if (doc.nodes.length === 0) return "graph has no nodes";

  const keys = new Set<string>();
  for (const [i, raw] of doc.nodes.entries()) {
    const node = raw as Record<string, unknown>;
    if (typeof node !== "object" || node === null) return `node ${i} is not an object`;
    if (typeof node.key !== "string" || node.key.length === 0) return `node ${i}: bad key`;
    if (typeof node.visits !== "number" || node.visits < 0) return `node ${i}: bad visits`;
    if (!NODE_CLASSES.includes(node.klass as never)) return `node ${i}: bad klass '${node.klass}'`;
    if (!isGrid(node.grid)) return `node ${i}: bad grid payload`;
    if (keys.has(node.key)) return `node ${i}: duplicate key`;
    keys.add(node.key);
  }
  for (const [i, raw] of doc.edges.entries()) {
    const edge = raw as Record<string, unknown>;
    if (typeof edge !== "object" || edge === null) return `edge ${i} is not an object`;
    if (typeof edge.op !== "string") return `edge ${i}: bad op`;
    if (typeof edge.traversals !== "number" || edge.traversals < 1)
      return `edge ${i}: bad traversals`;
    if (typeof edge.src !== "string" || !keys.has(edge.src))
      return `edge ${i}: unknown src`;
    if (typeof edge.dst !== "string" || !keys.has(edge.dst))
      return `edge ${i}: unknown dst`;
  }
  return null;
}

export function validatePayload(value: unknown): string | null {
  if (typeof value !== "object" || value === null) {
    return "payload must be an object";
  }
  const payload = value as Record<string, unknown>;
  if (typeof payload.layout_seed !== "number") return "missing layout_seed";
  return validateGraphDoc(payload.graph);
}
