/** Deterministic force-directed layout (seeded, dependency-free). */

import type { GraphDoc } from "./types";

export interface Point {
  x: number;
  y: number;
}

/** Small fast PRNG; same seed, same stream, on every platform. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
}

/**
 * Spring-embedder layout: repulsion between all pairs, springs along edges,
 * and a weak centering pull, annealed over a fixed iteration count.
 */
export function computeLayout(
  doc: GraphDoc,
  seed: number,
  options: LayoutOptions,
): Map<string, Point> {
  const { width, height } = options;
  const iterations = options.iterations ?? 250;
  const rand = mulberry32(seed);
  const n = doc.nodes.length;
  const xs = new Float64Array(n);
  const ys = new Float64Array(n);
  const index = new Map<string, number>();
  doc.nodes.forEach((node, i) => {
    index.set(node.key, i);
    xs[i] = width * (0.15 + 0.7 * rand());
    ys[i] = height * (0.15 + 0.7 * rand());
  });

  const springs: Array<[number, number]> = [];
  for (const edge of doc.edges) {
    const a = index.get(edge.src);
    const b = index.get(edge.dst);
    if (a !== undefined && b !== undefined && a !== b) springs.push([a, b]);
  }

  const area = width * height;
  const k = Math.sqrt(area / Math.max(1, n)) * 0.6;
  const cx = width / 2;
  const cy = height / 2;

  for (let it = 0; it < iterations; it++) {
    const temp = 0.1 * Math.max(width, height) * (1 - it / iterations) + 1;
    const dx = new Float64Array(n);
    const dy = new Float64Array(n);

    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let vx = xs[i] - xs[j];
        let vy = ys[i] - ys[j];
        let d2 = vx * vx + vy * vy;
        if (d2 < 1e-6) {
          // nudge coincident nodes apart deterministically
          vx = 0.01 * (1 + (i % 7));
          vy = 0.01 * (1 + (j % 5));
          d2 = vx * vx + vy * vy;
        }
        const d = Math.sqrt(d2);
        const force = (k * k) / d;
        dx[i] += (vx / d) * force;
        dy[i] += (vy / d) * force;
        dx[j] -= (vx / d) * force;
        dy[j] -= (vy / d) * force;
      }
    }
    for (const [a, b] of springs) {
      const vx = xs[a] - xs[b];
      const vy = ys[a] - ys[b];
      const d = Math.sqrt(vx * vx + vy * vy) || 1e-3;
      const force = (d * d) / k;
      dx[a] -= (vx / d) * force;
      dy[a] -= (vy / d) * force;
      dx[b] += (vx / d) * force;
      dy[b] += (vy / d) * force;
    }
    for (let i = 0; i < n; i++) {
      dx[i] += (cx - xs[i]) * 0.02;
      dy[i] += (cy - ys[i]) * 0.02;
      const d = Math.sqrt(dx[i] * dx[i] + dy[i] * dy[i]) || 1e-9;
      const step = Math.min(d, temp);
      xs[i] += (dx[i] / d) * step;
      ys[i] += (dy[i] / d) * step;
      xs[i] = Math.min(width - 20, Math.max(20, xs[i]));
      ys[i] = Math.min(height - 20, Math.max(20, ys[i]));
    }
  }

  const out = new Map<string, Point>();
  doc.nodes.forEach((node, i) => {
    out.set(node.key, { x: xs[i], y: ys[i] });
  });
  return out;
}
