/** SVG rendering of a trajectory graph with a click-to-inspect grid panel. */

import { cellColor, klassColor } from "./colors";
import { computeLayout } from "./layout";
import type { GraphDoc, GraphNode } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface RenderOptions {
  width?: number;
  height?: number;
  seed: number;
  /** node key to preselect (from the URL fragment) */
  initialNode?: string | null;
  /** initial zoom factor (from the URL fragment) */
  initialZoom?: number;
}

export interface RenderResult {
  svg: SVGSVGElement;
  /** currently open inspector panel, if any */
  panel: () => HTMLElement | null;
  selectNode: (key: string) => void;
  setZoom: (zoom: number) => void;
  zoom: () => number;
}

function radiusScale(doc: GraphDoc): (visits: number) => number {
  const top = Math.max(1, ...doc.nodes.map((n) => n.visits));
  return (visits) => 7 + 13 * (Math.log(visits + 1) / Math.log(top + 1));
}

function widthScale(doc: GraphDoc): (traversals: number) => number {
  const top = Math.max(1, ...doc.edges.map((e) => e.traversals));
  return (t) => 1 + 3.5 * (Math.log(t + 1) / Math.log(top + 1));
}

function gridTable(node: GraphNode): HTMLElement {
  const table = document.createElement("table");
  table.className = "viewer-grid";
  table.style.borderCollapse = "collapse";
  for (const row of node.grid) {
    const tr = document.createElement("tr");
    for (const cell of row) {
      const td = document.createElement("td");
      td.style.width = "14px";
      td.style.height = "14px";
      td.style.border = "1px solid #333";
      td.style.backgroundColor = cellColor(cell);
      td.dataset.cell = String(cell);
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  return table;
}

export function renderError(root: HTMLElement, message: string): void {
  const div = document.createElement("div");
  div.className = "viewer-error";
  div.textContent = `invalid graph data: ${message}`;
  root.appendChild(div);
}

export function renderGraph(
  root: HTMLElement,
  doc: GraphDoc,
  options: RenderOptions,
): RenderResult {
  const width = options.width ?? 960;
  const height = options.height ?? 640;
  const positions = computeLayout(doc, options.seed, { width, height });
  const radius = radiusScale(doc);
  const stroke = widthScale(doc);

  const svg = document.createElementNS(SVG_NS, "svg") as SVGSVGElement;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("width", "100%");
  svg.setAttribute("height", "100%");
  svg.dataset.taskId = doc.task_id;

  const viewport = document.createElementNS(SVG_NS, "g");
  viewport.setAttribute("class", "viewport");
  svg.appendChild(viewport);

  let zoom = options.initialZoom && options.initialZoom > 0 ? options.initialZoom : 1;
  const applyZoom = () => {
    const tx = (width / 2) * (1 - zoom);
    const ty = (height / 2) * (1 - zoom);
    viewport.setAttribute("transform", `translate(${tx} ${ty}) scale(${zoom})`);
  };
  applyZoom();

  for (const edge of doc.edges) {
    const a = positions.get(edge.src);
    const b = positions.get(edge.dst);
    if (!a || !b) continue;
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("class", "viewer-edge");
    line.setAttribute("x1", a.x.toFixed(2));
    line.setAttribute("y1", a.y.toFixed(2));
    const shrink = edge.src === edge.dst ? 0 : 1;
    line.setAttribute("x2", (b.x - (b.x - a.x) * 0.02 * shrink).toFixed(2));
    line.setAttribute("y2", (b.y - (b.y - a.y) * 0.02 * shrink).toFixed(2));
    line.setAttribute("stroke", "#778");
    line.setAttribute("stroke-width", stroke(edge.traversals).toFixed(2));
    line.setAttribute("stroke-linecap", "round");
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${edge.op} (${edge.traversals}x)`;
    line.appendChild(title);
    viewport.appendChild(line);
  }

  let panel: HTMLElement | null = null;
  const closePanel = () => {
    if (panel) {
      panel.remove();
      panel = null;
    }
  };

  const openPanel = (node: GraphNode) => {
    closePanel();
    panel = document.createElement("div");
    panel.className = "viewer-panel";
    panel.style.position = "absolute";
    panel.style.top = "12px";
    panel.style.right = "12px";
    panel.style.background = "#fff";
    panel.style.border = "1px solid #999";
    panel.style.padding = "10px";
    panel.style.boxShadow = "0 2px 8px rgba(0,0,0,.25)";
    const title = document.createElement("div");
    title.className = "viewer-panel-title";
    title.textContent = `${node.klass} - ${node.visits} visit${node.visits === 1 ? "" : "s"}`;
    title.style.marginBottom = "6px";
    title.style.fontWeight = "600";
    panel.appendChild(title);
    panel.appendChild(gridTable(node));
    const dims = document.createElement("div");
    dims.className = "viewer-panel-dims";
    dims.textContent = `${node.grid.length} x ${node.grid[0].length}`;
    dims.style.marginTop = "6px";
    dims.style.color = "#555";
    panel.appendChild(dims);
    root.appendChild(panel);
  };

  const byKey = new Map(doc.nodes.map((n) => [n.key, n]));

  for (const node of doc.nodes) {
    const p = positions.get(node.key)!;
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("class", "viewer-node");
    circle.setAttribute("cx", p.x.toFixed(2));
    circle.setAttribute("cy", p.y.toFixed(2));
    circle.setAttribute("r", radius(node.visits).toFixed(2));
    circle.setAttribute("fill", klassColor(node.klass));
    circle.setAttribute("stroke", "#222");
    circle.dataset.key = node.key;
    circle.dataset.klass = node.klass;
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${node.klass}: ${node.visits} visits`;
    circle.appendChild(title);
    circle.addEventListener("click", (event) => {
      event.stopPropagation();
      openPanel(node);
    });
    viewport.appendChild(circle);
  }

  // clicking empty space dismisses the inspector
  svg.addEventListener("click", closePanel);

  root.style.position = "relative";
  root.appendChild(svg);

  const result: RenderResult = {
    svg,
    panel: () => panel,
    selectNode: (key: string) => {
      const node = byKey.get(key);
      if (node) openPanel(node); // unknown ids are a no-op
    },
    setZoom: (z: number) => {
      zoom = Math.min(8, Math.max(0.1, z));
      applyZoom();
    },
    zoom: () => zoom,
  };
  if (options.initialNode) {
    result.selectNode(options.initialNode);
  }
  return result;
}
