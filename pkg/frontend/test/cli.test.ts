import assert from "node:assert/strict";
import { execFileSync, spawnSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { test } from "node:test";

import { parseArgs } from "../src/cli";

const CLI = path.join(__dirname, "..", "src", "cli.js");
const FIXTURES = path.join(__dirname, "..", "..", "test", "fixtures");

test("parseArgs happy path", () => {
  const args = parseArgs(["render", "--kind", "fig2", "--in", "a.csv", "--out", "x.svg"]);
  assert.equal(args.kind, "fig2");
  assert.deepEqual(args.inputs, ["a.csv"]);
});

test("parseArgs rejects bad kind, missing inputs, bad extension", () => {
  assert.throws(() => parseArgs(["render", "--kind", "fig9", "--in", "a", "--out", "x.svg"]), /--kind/);
  assert.throws(() => parseArgs(["render", "--kind", "fig2", "--out", "x.svg"]), /--in/);
  assert.throws(() => parseArgs(["render", "--kind", "fig2", "--in", "a", "--out", "x.png"]), /supported: \.svg/);
  assert.throws(() => parseArgs(["plot"]), /unknown command/);
});

test("cli renders a fixture end to end", () => {
  const out = path.join(fs.mkdtempSync(path.join(os.tmpdir(), "figs-")), "fig2.svg");
  execFileSync("node", [
    CLI, "render", "--kind", "fig2",
    "--in", path.join(FIXTURES, "fig2_summary.csv"),
    "--out", out,
  ]);
  const svg = fs.readFileSync(out, "utf-8");
  assert.match(svg, /series-radial/);
});

test("cli fails loudly on a missing column and writes nothing", () => {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "figs-"));
  const bad = path.join(dir, "bad.csv");
  fs.writeFileSync(bad, "A,kind\n1,radial\n");
  const out = path.join(dir, "out.svg");
  const result = spawnSync("node", [CLI, "render", "--kind", "fig2", "--in", bad, "--out", out]);
  assert.notEqual(result.status, 0);
  assert.match(String(result.stderr), /missing columns/);
  assert.ok(!fs.existsSync(out));
});

test("cli fails on empty csv without writing a file", () => {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "figs-"));
  const empty = path.join(dir, "empty.csv");
  fs.writeFileSync(empty, "A,kind,coherence_norm,theory_coherence\n");
  const out = path.join(dir, "out.svg");
  const result = spawnSync("node", [CLI, "render", "--kind", "fig2", "--in", empty, "--out", out]);
  assert.notEqual(result.status, 0);
  assert.ok(!fs.existsSync(out));
});
