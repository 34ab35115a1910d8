/** Linear and log axis scales with simple nice-tick generation. */

export interface Scale {
  (value: number): number;
  ticks: number[];
  domain: [number, number];
}

function niceStep(span: number, count: number): number {
  const raw = span / Math.max(1, count);
  const power = Math.pow(10, Math.floor(Math.log10(raw)));
  const base = raw / power;
  const step = base >= 5 ? 10 : base >= 2 ? 5 : base >= 1 ? 2 : 1;
  return step * power;
}

export function linearScale(
  domain: [number, number],
  range: [number, number],
  tickCount = 5,
): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  const step = niceStep(Math.abs(span), tickCount);
  const start = Math.ceil(Math.min(d0, d1) / step) * step;
  const stop = Math.max(d0, d1);
  const ticks: number[] = [];
  for (let t = start; t <= stop + 1e-9 * Math.abs(step); t += step) {
    ticks.push(Number(t.toFixed(12)));
  }
  fn.ticks = ticks;
  fn.domain = domain;
  return fn;
}

export function logScale(
  domain: [number, number],
  range: [number, number],
): Scale {
  const [d0, d1] = domain;
  if (d0 <= 0 || d1 <= 0) {
    throw new Error(`log scale needs positive domain, got [${d0}, ${d1}]`);
  }
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1);
  const [r0, r1] = range;
  const span = l1 - l0 || 1;
  const fn = ((value: number) => r0 + ((Math.log10(value) - l0) / span) * (r1 - r0)) as Scale;
  const ticks: number[] = [];
  for (let p = Math.ceil(Math.min(l0, l1)); p <= Math.max(l0, l1) + 1e-9; p += 1) {
    ticks.push(Math.pow(10, p));
  }
  if (ticks.length === 0) {
    ticks.push(d0, d1);
  }
  fn.ticks = ticks;
  fn.domain = domain;
  return fn;
}

export function extent(values: number[], padFraction = 0.05): [number, number] {
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const pad = (hi - lo || Math.abs(hi) || 1) * padFraction;
  return [lo - pad, hi + pad];
}
