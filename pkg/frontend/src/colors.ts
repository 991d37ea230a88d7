/** Color conventions: node classes mirror the pipeline's partition exactly. */

export const KLASS_COLORS: Record<string, string> = {
  input: "#4a90d9", // blue
  answer: "#2d8a4e", // green
  wrong_submission: "#c44536", // red
  other: "#bbbbbb", // gray
};

/** Cell palette for the ten grid colors (0 is the black background). */
export const CELL_PALETTE: readonly string[] = [
  "#000000",
  "#0074d9",
  "#ff4136",
  "#2ecc40",
  "#ffdc00",
  "#aaaaaa",
  "#f012be",
  "#ff851b",
  "#7fdbff",
  "#870c25",
];

export function klassColor(klass: string): string {
  return KLASS_COLORS[klass] ?? KLASS_COLORS.other;
}

export function cellColor(value: number): string {
  return CELL_PALETTE[value] ?? CELL_PALETTE[0];
}
