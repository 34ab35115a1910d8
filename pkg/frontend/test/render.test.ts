import assert from "node:assert/strict";
import * as fs from "node:fs";
import * as path from "node:path";
import { test } from "node:test";

import { parseCsv } from "../src/csv";
import { renderFigure } from "../src/render";

const FIXTURES = path.join(__dirname, "..", "..", "test", "fixtures");

function fixture(name: string) {
  return parseCsv(fs.readFileSync(path.join(FIXTURES, name), "utf-8"));
}

test("fig2 shows both series and the theory overlay", () => {
  const svg = renderFigure("fig2", [fixture("fig2_summary.csv")]);
  assert.match(svg, /series-radial/);
  assert.match(svg, /series-angular/);
  assert.match(svg, /class="theory"/);
  assert.match(svg, /^<svg xmlns/);
});

test("fig3 uses a log amplitude axis without error", () => {
  const svg = renderFigure("fig3", [fixture("fig3-berry_summary.csv")]);
  assert.match(svg, /series-radial/);
  assert.match(svg, /normalized coherence/);
});

test("fig4 draws theory curves and the crossover marker", () => {
  const svg = renderFigure("fig4", [fixture("fig4_summary.csv")]);
  assert.match(svg, /theory-geometric/);
  assert.match(svg, /theory-dynamic/);
  assert.match(svg, /class="crossover"/);
  assert.match(svg, /series-berry-echo/);
  assert.match(svg, /series-dynamic-echo/);
});

test("histogram overlays a gaussian fit", () => {
  const svg = renderFigure("histogram", [fixture("fig2_realizations.csv")]);
  assert.match(svg, /hist-bar/);
  assert.match(svg, /gaussian-fit/);
});

test("equator scatter draws the unit circle and points", () => {
  const svg = renderFigure("equator-scatter", [fixture("fig2_realizations.csv")]);
  assert.match(svg, /unit-circle/);
  assert.match(svg, /scatter-point/);
});

test("rendering is deterministic", () => {
  const table = fixture("fig2_summary.csv");
  assert.equal(renderFigure("fig2", [table]), renderFigure("fig2", [table]));
});

test("multiple inputs with identical headers merge", () => {
  const table = fixture("fig2_summary.csv");
  const svg = renderFigure("fig2", [table, table]);
  assert.match(svg, /series-radial/);
});

test("mismatched headers refuse to merge", () => {
  assert.throws(
    () => renderFigure("fig2", [fixture("fig2_summary.csv"), fixture("fig4_summary.csv")]),
    /different headers/,
  );
});

test("missing columns are named", () => {
  const table = parseCsv("A,kind\n1,radial\n");
  assert.throws(
    () => renderFigure("fig2", [table]),
    /missing columns: coherence_norm, theory_coherence/,
  );
});

test("empty data is rejected", () => {
  const table = parseCsv("A,kind,coherence_norm,theory_coherence\n");
  assert.throws(() => renderFigure("fig2", [table]), /no data rows/);
});
