#!/usr/bin/env node
/**
 * Render the stacked quench panels from a simulator artifact pair:
 *
 *   gaugequench-figures --prefix runs/s32 --out s32.svg \
 *       [--panels rr,flux,condensate,schedule] [--tmin 0] [--tmax 30]
 *
 * Reads <prefix>_timeseries.csv and <prefix>_events.json; exits nonzero
 * with the offending column named on schema mismatches.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";

import { renderFigure, type PanelKind } from "./render.js";
import { parseEvents, parseTimeSeries, SchemaError } from "./schema.js";

const PANEL_KINDS: PanelKind[] = ["rr", "flux", "condensate", "schedule"];

export function main(argv: string[]): number {
  let args;
  try {
    args = parseArgs({
      args: argv,
      options: {
        prefix: { type: "string" },
        out: { type: "string" },
        panels: { type: "string", default: "rr,flux,condensate" },
        tmin: { type: "string" },
        tmax: { type: "string" },
        title: { type: "string" },
      },
    }).values;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 2;
  }
  if (!args.prefix || !args.out) {
    console.error("error: --prefix and --out are required");
    return 2;
  }
  const panels = (args.panels as string).split(",").map((p) => p.trim()) as PanelKind[];
  for (const p of panels) {
    if (!PANEL_KINDS.includes(p)) {
      console.error(`error: unknown panel ${JSON.stringify(p)}; expected ${PANEL_KINDS.join("|")}`);
      return 2;
    }
  }
  let timeRange: [number, number] | undefined;
  if (args.tmin !== undefined || args.tmax !== undefined) {
    timeRange = [Number(args.tmin ?? "-Infinity"), Number(args.tmax ?? "Infinity")];
    if (Number.isNaN(timeRange[0]) || Number.isNaN(timeRange[1])) {
      console.error("error: --tmin/--tmax must be numbers");
      return 2;
    }
  }

  const csvPath = `${args.prefix}_timeseries.csv`;
  const jsonPath = `${args.prefix}_events.json`;
  try {
    const series = parseTimeSeries(readFileSync(csvPath, "utf8"));
    const { events, meta } = parseEvents(readFileSync(jsonPath, "utf8"));
    const title =
      args.title ??
      (meta
        ? `S=${meta.spin} L=${meta.length} ${String(meta.model ?? "").toUpperCase()} quench from m_z=${meta.initial_vacuum}`
        : undefined);
    const svg = renderFigure(series, events, { panels, timeRange, title });
    writeFileSync(args.out, svg);
    console.log(`wrote ${args.out} (${panels.join(",")}; ${events.length} events)`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      const where = err.column ? ` (column ${err.column})` : "";
      console.error(`error: schema mismatch${where}: ${err.message}`);
      return 1;
    }
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
