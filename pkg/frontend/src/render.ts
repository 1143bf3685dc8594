/**
 * Deterministic SVG assembly for the stacked quench panels.
 *
 * Panel (a): return-rate components (orthogonal stretches drawn as gaps, not
 * clipped spikes) with the minimum envelope and one diamond per dominance
 * crossing. Panel (b): electric flux with a dot per sign change. Panel (c):
 * chiral condensate. The optional schedule strip shows which vacuum
 * dominates between consecutive crossings. Every marker carries the exact
 * serialized event time in a data-time attribute.
 */

import { scaleLinear, type ScaleLinear } from "d3-scale";
import { line } from "d3-shape";

import type { EventRecord, TimeSeries } from "./schema.js";

export type PanelKind = "rr" | "flux" | "condensate" | "schedule";

export interface RenderOptions {
  panels?: PanelKind[];
  timeRange?: [number, number];
  width?: number;
  title?: string;
}

const PANEL_HEIGHTS: Record<PanelKind, number> = {
  rr: 240,
  flux: 170,
  condensate: 170,
  schedule: 64,
};

const MARGIN = { left: 64, right: 18, top: 30, bottom: 40 };

const COMPONENT_COLORS = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2",
];

const round2 = (x: number) => Math.round(x * 100) / 100;

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

interface Window {
  idx: number[];
  t0: number;
  t1: number;
}

function clipToRange(series: TimeSeries, range?: [number, number]): Window {
  const idx: number[] = [];
  for (let i = 0; i < series.times.length; i++) {
    const t = series.times[i];
    if (!range || (t >= range[0] && t <= range[1])) idx.push(i);
  }
  if (idx.length === 0) {
    throw new Error("no samples inside the requested time range");
  }
  let t0 = series.times[idx[0]];
  let t1 = series.times[idx[idx.length - 1]];
  if (t0 === t1) {
    // degenerate single-sample series still gets a drawable domain
    t1 = t0 + 1;
  }
  return { idx, t0, t1 };
}

function finiteExtent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (Number.isFinite(v)) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  if (lo > hi) return [0, 1];
  if (lo === hi) return [lo - 0.5, hi + 0.5];
  return [lo, hi];
}

function pathFor(
  xs: number[],
  ys: number[],
  x: ScaleLinear<number, number>,
  y: ScaleLinear<number, number>,
): string {
  const gen = line<number>()
    .defined((i) => Number.isFinite(ys[i]))
    .x((i) => round2(x(xs[i])))
    .y((i) => round2(y(ys[i])));
  return gen([...xs.keys()]) ?? "";
}

function interpolateAt(times: number[], values: number[], t: number): number {
  if (t <= times[0]) return values[0];
  for (let i = 1; i < times.length; i++) {
    if (t <= times[i]) {
      const w = (t - times[i - 1]) / (times[i] - times[i - 1]);
      return values[i - 1] * (1 - w) + values[i] * w;
    }
  }
  return values[values.length - 1];
}

function axis(
  x: ScaleLinear<number, number>,
  y: ScaleLinear<number, number>,
  top: number,
  height: number,
  label: string,
  withTimeAxis: boolean,
): string {
  const parts: string[] = [];
  const [x0, x1] = x.range();
  parts.push(
    `<rect x="${x0}" y="${top}" width="${x1 - x0}" height="${height}" fill="none" stroke="#333" stroke-width="1"/>`,
  );
  for (const tick of y.ticks(4)) {
    const py = round2(y(tick));
    parts.push(`<line x1="${x0 - 4}" y1="${py}" x2="${x0}" y2="${py}" stroke="#333"/>`);
    parts.push(
      `<text x="${x0 - 8}" y="${py + 3}" text-anchor="end" font-size="11">${tick}</text>`,
    );
  }
  parts.push(
    `<text x="${x0 - 44}" y="${top + height / 2}" font-size="12" text-anchor="middle" transform="rotate(-90 ${x0 - 44} ${top + height / 2})">${esc(label)}</text>`,
  );
  if (withTimeAxis) {
    for (const tick of x.ticks(8)) {
      const px = round2(x(tick));
      parts.push(
        `<line x1="${px}" y1="${top + height}" x2="${px}" y2="${top + height + 4}" stroke="#333"/>`,
      );
      parts.push(
        `<text x="${px}" y="${top + height + 16}" text-anchor="middle" font-size="11">${tick}</text>`,
      );
    }
    parts.push(
      `<text x="${(x0 + x1) / 2}" y="${top + height + 32}" text-anchor="middle" font-size="12">t (1/J)</text>`,
    );
  }
  return parts.join("\n");
}

function diamond(cx: number, cy: number, size: number): string {
  const x = round2(cx);
  const y = round2(cy);
  return `M ${x} ${round2(y - size)} L ${round2(x + size)} ${y} L ${x} ${round2(y + size)} L ${round2(x - size)} ${y} Z`;
}

export function renderFigure(
  series: TimeSeries,
  events: EventRecord[],
  opts: RenderOptions = {},
): string {
  const panels = opts.panels ?? ["rr", "flux", "condensate"];
  const width = opts.width ?? 880;
  const win = clipToRange(series, opts.timeRange);
  const x = scaleLinear()
    .domain([win.t0, win.t1])
    .range([MARGIN.left, width - MARGIN.right]);

  const inRange = (t: number) => t >= win.t0 && t <= win.t1;
  const visible = events.filter((e) => inRange(e.time));
  const crossings = visible.filter((e) => e.kind === "dqpt_crossing");
  const zeros = visible.filter((e) => e.kind === "op_zero");

  const times = win.idx.map((i) => series.times[i]);
  const pick = (col: number[]) => win.idx.map((i) => col[i]);

  const totalHeight =
    MARGIN.top +
    panels.reduce((acc, p) => acc + PANEL_HEIGHTS[p] + 26, 0) +
    MARGIN.bottom;

  const out: string[] = [];
  out.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${totalHeight}" viewBox="0 0 ${width} ${totalHeight}" font-family="sans-serif">`,
  );
  out.push(`<rect width="${width}" height="${totalHeight}" fill="white"/>`);
  if (opts.title) {
    out.push(
      `<text x="${width / 2}" y="18" text-anchor="middle" font-size="13">${esc(opts.title)}</text>`,
    );
  }

  let top = MARGIN.top;
  panels.forEach((panel, panelIndex) => {
    const height = PANEL_HEIGHTS[panel];
    const lastPanel = panelIndex === panels.length - 1;
    const clipId = `clip-${panelIndex}`;
    out.push(
      `<clipPath id="${clipId}"><rect x="${MARGIN.left}" y="${top}" width="${width - MARGIN.left - MARGIN.right}" height="${height}"/></clipPath>`,
    );

    if (panel === "rr") {
      const lambdaMin = pick(series.lambdaMin);
      const envelopeMax = Math.max(...lambdaMin.filter(Number.isFinite), 0.1);
      const y = scaleLinear()
        .domain([0, 3 * envelopeMax])
        .range([top + height, top]);
      out.push(axis(x, y, top, height, "return rate", lastPanel));
      out.push(`<g clip-path="url(#${clipId})">`);
      series.mzLabels.forEach((label, k) => {
        const comp = win.idx.map((i) => series.lambdas[i][k]);
        const color = COMPONENT_COLORS[k % COMPONENT_COLORS.length];
        out.push(
          `<path d="${pathFor(times, comp, x, y)}" fill="none" stroke="${color}" stroke-width="1.2" opacity="0.85"/>`,
        );
      });
      out.push(
        `<path d="${pathFor(times, lambdaMin, x, y)}" fill="none" stroke="#000" stroke-width="1.8"/>`,
      );
      out.push("</g>");
      for (const ev of crossings) {
        const cy = y(Math.min(interpolateAt(times, lambdaMin, ev.time), y.domain()[1]));
        out.push(
          `<path class="dqpt-marker" data-time="${ev.rawTime}" d="${diamond(x(ev.time), cy, 5)}" fill="#d62728" stroke="#7f0000"/>`,
        );
      }
      series.mzLabels.forEach((label, k) => {
        const color = COMPONENT_COLORS[k % COMPONENT_COLORS.length];
        const lx = width - MARGIN.right - 64;
        const ly = top + 14 + 14 * k;
        out.push(`<line x1="${lx}" y1="${ly}" x2="${lx + 16}" y2="${ly}" stroke="${color}" stroke-width="2"/>`);
        out.push(`<text x="${lx + 20}" y="${ly + 3}" font-size="11">m_z=${esc(label)}</text>`);
      });
    } else if (panel === "flux") {
      const flux = pick(series.flux);
      const [lo, hi] = finiteExtent(flux);
      const pad = 0.08 * (hi - lo);
      const y = scaleLinear().domain([lo - pad, hi + pad]).range([top + height, top]);
      out.push(axis(x, y, top, height, "electric flux", lastPanel));
      const zeroY = round2(y(0));
      out.push(
        `<line x1="${MARGIN.left}" y1="${zeroY}" x2="${width - MARGIN.right}" y2="${zeroY}" stroke="#999" stroke-dasharray="4 3"/>`,
      );
      out.push(`<g clip-path="url(#${clipId})">`);
      out.push(
        `<path d="${pathFor(times, flux, x, y)}" fill="none" stroke="#1f77b4" stroke-width="1.6"/>`,
      );
      out.push("</g>");
      for (const ev of zeros) {
        out.push(
          `<circle class="zero-marker" data-time="${ev.rawTime}" cx="${round2(x(ev.time))}" cy="${zeroY}" r="4.5" fill="#d62728" stroke="#7f0000"/>`,
        );
      }
    } else if (panel === "condensate") {
      const cond = pick(series.condensate);
      const [, hi] = finiteExtent(cond);
      const y = scaleLinear().domain([0, Math.max(hi * 1.1, 0.1)]).range([top + height, top]);
      out.push(axis(x, y, top, height, "condensate", lastPanel));
      out.push(`<g clip-path="url(#${clipId})">`);
      out.push(
        `<path d="${pathFor(times, cond, x, y)}" fill="none" stroke="#2ca02c" stroke-width="1.6"/>`,
      );
      out.push("</g>");
    } else {
      // dominance schedule strip between consecutive crossings
      const boundaries = [win.t0, ...crossings.map((e) => e.time), win.t1];
      const stripTop = top + 12;
      const stripH = height - 24;
      out.push(
        `<text x="${MARGIN.left - 44}" y="${top + height / 2}" font-size="12" text-anchor="middle" transform="rotate(-90 ${MARGIN.left - 44} ${top + height / 2})">dominance</text>`,
      );
      for (let s = 0; s + 1 < boundaries.length; s++) {
        const [a, b] = [boundaries[s], boundaries[s + 1]];
        if (b <= a) continue;
        const mid = 0.5 * (a + b);
        let nearest = 0;
        for (let i = 1; i < times.length; i++) {
          if (Math.abs(times[i] - mid) < Math.abs(times[nearest] - mid)) nearest = i;
        }
        const label = series.argminMz[win.idx[nearest]] ?? "";
        const k = series.mzLabels.indexOf(label);
        const color = k >= 0 ? COMPONENT_COLORS[k % COMPONENT_COLORS.length] : "#bbb";
        out.push(
          `<rect x="${round2(x(a))}" y="${stripTop}" width="${round2(x(b) - x(a))}" height="${stripH}" fill="${color}" opacity="0.45" stroke="#333"/>`,
        );
        out.push(
          `<text x="${round2(x(mid))}" y="${stripTop + stripH / 2 + 4}" text-anchor="middle" font-size="11">${esc(label)}</text>`,
        );
      }
      for (const ev of crossings) {
        out.push(
          `<path class="dqpt-marker" data-time="${ev.rawTime}" d="${diamond(x(ev.time), stripTop - 5, 4)}" fill="#d62728" stroke="#7f0000"/>`,
        );
      }
    }
    out.push(
      `<text x="${MARGIN.left + 6}" y="${top - 6}" font-size="12">(${String.fromCharCode(97 + panelIndex)})</text>`,
    );
    top += height + 26;
  });

  out.push("</svg>");
  return out.join("\n") + "\n";
}
