import assert from "node:assert/strict";
import { test } from "node:test";

import { numeric, parseCsv, requireColumns } from "../src/csv";

test("parseCsv splits header and rows", () => {
  const table = parseCsv("a,b,c\n1,2,3\n4,5,6\n");
  assert.deepEqual(table.columns, ["a", "b", "c"]);
  assert.equal(table.rows.length, 2);
  assert.equal(table.rows[1]["b"], "5");
});

test("parseCsv rejects empty input", () => {
  assert.throws(() => parseCsv(""), /empty CSV/);
});

test("requireColumns names every missing column", () => {
  const table = parseCsv("a,b\n1,2\n");
  assert.throws(() => requireColumns(table, ["a", "x", "y"], "fig2"), /fig2.*x, y/);
});

test("requireColumns rejects header-only files", () => {
  const table = parseCsv("a,b\n");
  assert.throws(() => requireColumns(table, ["a"], "fig2"), /no data rows/);
});

test("numeric parses and rejects", () => {
  const row = { v: "0.25", bad: "nope" };
  assert.equal(numeric(row, "v"), 0.25);
  assert.throws(() => numeric(row, "bad"), /non-numeric/);
});
