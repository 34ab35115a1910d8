/** Histogram binning and the gaussian overlay used by the phase plots. */

export function mean(values: number[]): number {
  return values.reduce((a, b) => a + b, 0) / (values.length || 1);
}

export function stddev(values: number[]): number {
  if (values.length < 2) return 0;
  const m = mean(values);
  const ss = values.reduce((a, b) => a + (b - m) ** 2, 0);
  return Math.sqrt(ss / (values.length - 1));
}

export interface Histogram {
  edges: number[];
  counts: number[];
  binWidth: number;
}

export function histogram(values: number[], binCount: number): Histogram {
  if (values.length === 0 || binCount < 1) {
    throw new Error("histogram needs values and binCount >= 1");
  }
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const width = (hi - lo || Math.abs(hi) || 1) / binCount;
  const edges = Array.from({ length: binCount + 1 }, (_, i) => lo + i * width);
  const counts = new Array(binCount).fill(0);
  for (const v of values) {
    const idx = Math.min(binCount - 1, Math.floor((v - lo) / width));
    counts[idx] += 1;
  }
  return { edges, counts, binWidth: width };
}

/** Gaussian count density matching a histogram's total count and bin width. */
export function gaussianOverlay(
  mu: number,
  sigma: number,
  total: number,
  binWidth: number,
  xs: number[],
): number[] {
  if (sigma <= 0) {
    return xs.map(() => 0);
  }
  const norm = (total * binWidth) / (sigma * Math.sqrt(2 * Math.PI));
  return xs.map((x) => norm * Math.exp(-0.5 * ((x - mu) / sigma) ** 2));
}
