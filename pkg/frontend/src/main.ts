/** Bootstrap: read the inlined payload, validate it, render or complain. */

import { renderError, renderGraph } from "./render";
import type { ViewerPayload } from "./types";
import { validatePayload } from "./types";

export interface FragmentParams {
  node: string | null;
  zoom: number | null;
}

/** Parse "#node=<key>&zoom=<factor>" style fragments. */
export function parseFragment(fragment: string): FragmentParams {
  const out: FragmentParams = { node: null, zoom: null };
  const text = fragment.startsWith("#") ? fragment.slice(1) : fragment;
  for (const part of text.split("&")) {
    const eq = part.indexOf("=");
    if (eq < 0) continue;
    const name = decodeURIComponent(part.slice(0, eq));
    const value = decodeURIComponent(part.slice(eq + 1));
    if (name === "node" && value) out.node = value;
    if (name === "zoom") {
      const z = Number(value);
      if (Number.isFinite(z) && z > 0) out.zoom = z;
    }
  }
  return out;
}

export function boot(doc: Document, fragment = ""): void {
  const root = doc.getElementById("viewer-root");
  if (!root) return;
  const dataElement = doc.getElementById("graph-data");
  if (!dataElement || !dataElement.textContent) {
    renderError(root, "no embedded graph data");
    return;
  }
  let payload: unknown;
  try {
    payload = JSON.parse(dataElement.textContent);
  } catch (err) {
    renderError(root, `not valid JSON (${(err as Error).message})`);
    return;
  }
  const problem = validatePayload(payload);
  if (problem !== null) {
    renderError(root, problem);
    return;
  }
  const { layout_seed, graph } = payload as unknown as ViewerPayload;
  const params = parseFragment(fragment);
  renderGraph(root, graph, {
    seed: layout_seed,
    initialNode: params.node,
    initialZoom: params.zoom ?? undefined,
  });
}

declare const window: (Window & typeof globalThis) | undefined;

if (typeof window !== "undefined" && typeof document !== "undefined") {
  const start = () => boot(document, window!.location.hash);
  if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", start);
  } else {
    start();
  }
}
