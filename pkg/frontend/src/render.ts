/**
 * Figure kinds rendered from the simulator's CSV exports.
 *
 * fig2            coherence vs solid angle, radial (filled) vs angular
 *                 (open) markers with the closed-form overlay
 * fig3            coherence vs normalized noise amplitude, log x
 * fig4            phase spread vs evolution time, log-log, both sequences,
 *                 theory curves and the crossover marker
 * histogram       per-realization phase histogram with gaussian fit
 * equator-scatter final (X, Y) Bloch components on the equatorial plane
 *
 * The renderer only reads the exported files; it never talks to the
 * simulator.
 */

import { Table, numeric, requireColumns } from "./csv";
import { Scale, extent, linearScale, logScale } from "./scale";
import { gaussianOverlay, histogram, mean, stddev } from "./stats";
import { document as svgDocument, el, fmt, polyline, text } from "./svg";

export const FIGURE_KINDS = ["fig2", "fig3", "fig4", "histogram", "equator-scatter"] as const;
export type FigureKind = (typeof FIGURE_KINDS)[number];

const WIDTH = 640;
const HEIGHT = 440;
const MARGIN = { left: 70, right: 24, top: 28, bottom: 56 };
const PLOT: [number, number, number, number] = [
  MARGIN.left,
  MARGIN.top,
  WIDTH - MARGIN.right,
  HEIGHT - MARGIN.bottom,
];

const COLORS: Record<string, string> = {
  radial: "#1f77b4",
  angular: "#2ca02c",
  "berry-echo": "#1f77b4",
  "dynamic-echo": "#9467bd",
  theory: "#d62728",
};

function axes(x: Scale, y: Scale, xLabel: string, yLabel: string, title: string): string[] {
  const [x0, y0, x1, y1] = PLOT;
  const parts: string[] = [];
  parts.push(el("rect", {
    x: x0, y: y0, width: x1 - x0, height: y1 - y0,
    fill: "none", stroke: "#333", "stroke-width": 1,
  }));
  for (const tick of x.ticks) {
    const px = x(tick);
    if (px < x0 - 0.5 || px > x1 + 0.5) continue;
    parts.push(el("line", { x1: px, y1: y1, x2: px, y2: y1 + 5, stroke: "#333" }));
    parts.push(text(formatTick(tick), {
      x: px, y: y1 + 18, "text-anchor": "middle", "font-size": 11, "font-family": "sans-serif",
    }));
  }
  for (const tick of y.ticks) {
    const py = y(tick);
    if (py < y0 - 0.5 || py > y1 + 0.5) continue;
    parts.push(el("line", { x1: x0 - 5, y1: py, x2: x0, y2: py, stroke: "#333" }));
    parts.push(text(formatTick(tick), {
      x: x0 - 8, y: py + 4, "text-anchor": "end", "font-size": 11, "font-family": "sans-serif",
    }));
  }
  parts.push(text(xLabel, {
    x: (x0 + x1) / 2, y: HEIGHT - 14, "text-anchor": "middle",
    "font-size": 13, "font-family": "sans-serif",
  }));
  parts.push(text(yLabel, {
    x: 16, y: (y0 + y1) / 2, "text-anchor": "middle", "font-size": 13,
    "font-family": "sans-serif", transform: `rotate(-90 16 ${fmt((y0 + y1) / 2)})`,
  }));
  parts.push(text(title, {
    x: (x0 + x1) / 2, y: 18, "text-anchor": "middle", "font-size": 14,
    "font-family": "sans-serif", "font-weight": "bold",
  }));
  return parts;
}

function formatTick(value: number): string {
  if (value !== 0 && (Math.abs(value) < 0.01 || Math.abs(value) >= 10000)) {
    return value.toExponential(0);
  }
  return String(Number(value.toPrecision(4)));
}

function marker(px: number, py: number, kind: string, series: string): string {
  const common = { cx: px, cy: py, r: 4, class: `series-${series}` };
  if (kind === "open") {
    return el("circle", { ...common, fill: "white", stroke: COLORS[series] ?? "#333", "stroke-width": 1.5 });
  }
  if (kind === "square") {
    return el("rect", {
      x: px - 3.5, y: py - 3.5, width: 7, height: 7,
      fill: COLORS[series] ?? "#333", class: `series-${series}`,
    });
  }
  return el("circle", { ...common, fill: COLORS[series] ?? "#333" });
}

function sortedBy(rows: Array<Record<string, string>>, column: string) {
  return [...rows].sort((a, b) => numeric(a, column) - numeric(b, column));
}

/** Coherence vs a sweep column, shared by fig2 and fig3. */
function coherenceSweep(
  table: Table,
  sweepColumn: string,
  xLabel: string,
  title: string,
  xScaleKind: "linear" | "log",
): string {
  requireColumns(table, [sweepColumn, "kind", "coherence_norm", "theory_coherence"], title);
  const xs = table.rows.map((r) => numeric(r, sweepColumn));
  const x = xScaleKind === "log"
    ? logScale([Math.min(...xs), Math.max(...xs)], [PLOT[0], PLOT[2]])
    : linearScale(extent(xs), [PLOT[0], PLOT[2]]);
  const y = linearScale([0, 1.05], [PLOT[3], PLOT[1]]);
  const parts = axes(x, y, xLabel, "normalized coherence", title);
  const theoryRows = sortedBy(table.rows.filter((r) => r["kind"] === "radial"), sweepColumn);
  if (theoryRows.length > 0) {
    parts.push(polyline(
      theoryRows.map((r) => [x(numeric(r, sweepColumn)), y(numeric(r, "theory_coherence"))]),
      { stroke: COLORS.theory, "stroke-width": 1.5, class: "theory" },
    ));
  }
  for (const noiseKind of ["radial", "angular"]) {
    for (const row of table.rows.filter((r) => r["kind"] === noiseKind)) {
      parts.push(marker(
        x(numeric(row, sweepColumn)), y(numeric(row, "coherence_norm")),
        noiseKind === "radial" ? "filled" : "open", noiseKind,
      ));
    }
  }
  return svgDocument(WIDTH, HEIGHT, parts);
}

export function renderFig2(table: Table): string {
  return coherenceSweep(table, "A", "solid angle A (rad)", "coherence vs solid angle", "linear");
}

export function renderFig3(table: Table): string {
  return coherenceSweep(table, "s", "normalized noise amplitude s", "coherence vs noise amplitude", "log");
}

export function renderFig4(table: Table): string {
  requireColumns(
    table,
    ["tau_ns", "sequence", "sigma", "theory_sigma_geometric", "theory_sigma_dynamic", "tau_star_ns"],
    "fig4",
  );
  const taus = table.rows.map((r) => numeric(r, "tau_ns"));
  const sigmas = table.rows.flatMap((r) => [
    numeric(r, "sigma"), numeric(r, "theory_sigma_geometric"), numeric(r, "theory_sigma_dynamic"),
  ]).filter((v) => v > 0);
  const x = logScale([Math.min(...taus), Math.max(...taus)], [PLOT[0], PLOT[2]]);
  const y = logScale([Math.min(...sigmas), Math.max(...sigmas)], [PLOT[3], PLOT[1]]);
  const parts = axes(x, y, "evolution time (ns)", "phase spread (rad)", "phase spread vs evolution time");
  const sorted = sortedBy(table.rows, "tau_ns");
  const uniqueTaus = [...new Map(sorted.map((r) => [r["tau_ns"], r])).values()];
  for (const [column, cls] of [
    ["theory_sigma_geometric", "theory theory-geometric"],
    ["theory_sigma_dynamic", "theory theory-dynamic"],
  ] as const) {
    parts.push(polyline(
      uniqueTaus.filter((r) => numeric(r, column) > 0)
        .map((r) => [x(numeric(r, "tau_ns")), y(numeric(r, column))]),
      { stroke: COLORS.theory, "stroke-width": 1.2, "stroke-dasharray": cls.includes("dynamic") ? "5 3" : "none", class: cls },
    ));
  }
  const tauStar = numeric(table.rows[0], "tau_star_ns");
  if (tauStar >= x.domain[0] && tauStar <= x.domain[1]) {
    parts.push(el("line", {
      x1: x(tauStar), y1: PLOT[1], x2: x(tauStar), y2: PLOT[3],
      stroke: "#777", "stroke-dasharray": "3 3", class: "crossover",
    }));
  }
  for (const row of table.rows) {
    const sequence = row["sequence"];
    if (numeric(row, "sigma") <= 0) continue;
    parts.push(marker(
      x(numeric(row, "tau_ns")), y(numeric(row, "sigma")),
      sequence === "dynamic-echo" ? "square" : "filled", sequence,
    ));
  }
  return svgDocument(WIDTH, HEIGHT, parts);
}

export function renderHistogram(table: Table): string {
  requireColumns(table, ["label", "phase"], "histogram");
  const groups = new Map<string, number[]>();
  for (const row of table.rows) {
    const label = row["label"];
    if (!groups.has(label)) groups.set(label, []);
    groups.get(label)!.push(numeric(row, "phase"));
  }
  const all = table.rows.map((r) => numeric(r, "phase"));
  const x = linearScale(extent(all, 0.1), [PLOT[0], PLOT[2]]);
  const binCount = Math.max(6, Math.min(40, Math.round(Math.sqrt(all.length))));
  let maxCount = 1;
  const rendered: string[] = [];
  for (const [label, phases] of groups) {
    const bins = histogram(phases, binCount);
    maxCount = Math.max(maxCount, ...bins.counts);
    rendered.push(label);
    void bins;
  }
  const y = linearScale([0, maxCount * 1.1], [PLOT[3], PLOT[1]]);
  const parts = axes(x, y, "phase (rad)", "realizations per bin", "phase histogram");
  let seriesIndex = 0;
  for (const [label, phases] of groups) {
    const bins = histogram(phases, binCount);
    const color = seriesIndex % 2 === 0 ? COLORS.radial : COLORS.angular;
    for (let i = 0; i < bins.counts.length; i += 1) {
      if (bins.counts[i] === 0) continue;
      parts.push(el("rect", {
        x: x(bins.edges[i]),
        y: y(bins.counts[i]),
        width: Math.max(0.5, x(bins.edges[i + 1]) - x(bins.edges[i]) - 0.5),
        height: y(0) - y(bins.counts[i]),
        fill: color, "fill-opacity": 0.45, class: "hist-bar",
        "data-label": label,
      }));
    }
    const mu = mean(phases);
    const sigma = stddev(phases);
    if (sigma > 0) {
      const [lo, hi] = x.domain;
      const curveX = Array.from({ length: 120 }, (_, i) => lo + ((hi - lo) * i) / 119);
      const curveY = gaussianOverlay(mu, sigma, phases.length, bins.binWidth, curveX);
      parts.push(polyline(
        curveX.map((cx, i) => [x(cx), y(Math.min(curveY[i], maxCount * 1.1))]),
        { stroke: "#d62728", "stroke-width": 1.5, class: "gaussian-fit", "data-label": label },
      ));
    }
    seriesIndex += 1;
  }
  return svgDocument(WIDTH, HEIGHT, parts);
}

export function renderEquatorScatter(table: Table): string {
  requireColumns(table, ["x", "y"], "equator-scatter");
  const half = Math.min(PLOT[2] - PLOT[0], PLOT[3] - PLOT[1]) / 2;
  const cx = (PLOT[0] + PLOT[2]) / 2;
  const cy = (PLOT[1] + PLOT[3]) / 2;
  const x = linearScale([-1.1, 1.1], [cx - half, cx + half]);
  const y = linearScale([-1.1, 1.1], [cy + half, cy - half]);
  const parts = axes(x, y, "<X>", "<Y>", "equatorial Bloch components");
  parts.push(el("circle", {
    cx: x(0), cy: y(0), r: x(1) - x(0),
    fill: "none", stroke: "#777", "stroke-dasharray": "4 3", class: "unit-circle",
  }));
  for (const row of table.rows) {
    parts.push(el("circle", {
      cx: x(numeric(row, "x")), cy: y(numeric(row, "y")), r: 2.5,
      fill: COLORS.radial, "fill-opacity": 0.6, class: "scatter-point",
    }));
  }
  return svgDocument(WIDTH, HEIGHT, parts);
}

export function renderFigure(kind: FigureKind, tables: Table[]): string {
  if (tables.length === 0) {
    throw new Error("no input tables");
  }
  const merged: Table = tables.length === 1 ? tables[0] : mergeTables(tables);
  switch (kind) {
    case "fig2":
      return renderFig2(merged);
    case "fig3":
      return renderFig3(merged);
    case "fig4":
      return renderFig4(merged);
    case "histogram":
      return renderHistogram(merged);
    case "equator-scatter":
      return renderEquatorScatter(merged);
  }
}

function mergeTables(tables: Table[]): Table {
  const columns = tables[0].columns;
  for (const t of tables.slice(1)) {
    if (t.columns.join(",") !== columns.join(",")) {
      throw new Error("cannot merge CSV inputs with different headers");
    }
  }
  return { columns, rows: tables.flatMap((t) => t.rows) };
}
