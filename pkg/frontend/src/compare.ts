// Pure geometry/selection helpers for the region comparison bar view.

import type { CompareRowDoc } from "./api.js";

export type Metric = "gross" | "net";

export function metricValue(row: CompareRowDoc, metric: Metric): number {
  return metric === "net" ? row.net_gco2eq : row.gross_gco2eq;
}

/** Bar length as a percentage of the worst (largest) value; 0 when all zero. */
export function barWidthPercent(row: CompareRowDoc, rows: CompareRowDoc[], metric: Metric): number {
  const max = Math.max(...rows.map((r) => metricValue(r, metric)), 0);
  if (max <= 0) return 0;
  return (metricValue(row, metric) / max) * 100;
}

/** Results arrive sorted ascending, so the first row is the best choice. */
export function bestRow(rows: CompareRowDoc[]): CompareRowDoc | null {
  return rows.length > 0 ? rows[0] : null;
}

export function formatGrams(grams: number): string {
  if (Math.abs(grams) >= 1000) {
    return `${(grams / 1000).toFixed(3)} kg`;
  }
  return `${grams.toFixed(1)} g`;
}

export function formatRatio(ratio: number | null): string {
  return ratio === null ? "undefined (best is 0)" : `${ratio.toFixed(2)}x`;
}
