/**
 * Parsers for the simulator's two artifact formats.
 *
 * The CSV schema is fixed: t, lambda_min, argmin_mz, one lambda_<mz> column
 * per vacuum (m_z descending, exact fraction labels), then flux, condensate,
 * energy, norm. Infinities arrive as the literal "inf"/"-inf". The events
 * JSON carries the detected event list plus the zero/crossing pairings; the
 * raw decimal time tokens are preserved so markers can quote them verbatim.
 */

export class SchemaError extends Error {
  constructor(message: string, readonly column?: string) {
    super(message);
    this.name = "SchemaError";
  }
}

export interface TimeSeries {
  times: number[];
  lambdaMin: number[];
  argminMz: (string | null)[];
  /** fraction labels of the rate components, m_z descending */
  mzLabels: string[];
  /** lambdas[row][component], Infinity for orthogonal samples */
  lambdas: number[][];
  flux: number[];
  condensate: number[];
  energy: number[];
  norm: number[];
}

function parseFloatToken(token: string, column: string, line: number): number {
  if (token === "inf") return Infinity;
  if (token === "-inf") return -Infinity;
  const value = Number(token);
  if (token === "" || Number.isNaN(value)) {
    throw new SchemaError(
      `line ${line}: column ${column} has non-numeric value ${JSON.stringify(token)}`,
      column,
    );
  }
  return value;
}

const LEADING = ["t", "lambda_min", "argmin_mz"];
const TRAILING = ["flux", "condensate", "energy", "norm"];

export function parseTimeSeries(text: string): TimeSeries {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length < 2) {
    throw new SchemaError("time-series CSV needs a header and at least one row");
  }
  const header = lines[0].split(",");
  for (const [i, name] of LEADING.entries()) {
    if (header[i] !== name) {
      throw new SchemaError(`expected column ${name} at position ${i}`, name);
    }
  }
  const lambdaCols = header.filter((h) => h.startsWith("lambda_") && h !== "lambda_min");
  for (const [i, name] of TRAILING.entries()) {
    const at = LEADING.length + lambdaCols.length + i;
    if (header[at] !== name) {
      throw new SchemaError(`expected column ${name} at position ${at}`, name);
    }
  }
  const mzLabels = lambdaCols.map((h) => h.slice("lambda_".length));

  const series: TimeSeries = {
    times: [], lambdaMin: [], argminMz: [], mzLabels,
    lambdas: [], flux: [], condensate: [], energy: [], norm: [],
  };
  for (let r = 1; r < lines.length; r++) {
    const cells = lines[r].split(",");
    if (cells.length !== header.length) {
      throw new SchemaError(`line ${r + 1}: expected ${header.length} cells, got ${cells.length}`);
    }
    series.times.push(parseFloatToken(cells[0], "t", r + 1));
    series.lambdaMin.push(parseFloatToken(cells[1], "lambda_min", r + 1));
    series.argminMz.push(cells[2] === "" ? null : cells[2]);
    series.lambdas.push(
      lambdaCols.map((name, k) => parseFloatToken(cells[3 + k], name, r + 1)),
    );
    const base = 3 + lambdaCols.length;
    series.flux.push(parseFloatToken(cells[base], "flux", r + 1));
    series.condensate.push(parseFloatToken(cells[base + 1], "condensate", r + 1));
    series.energy.push(parseFloatToken(cells[base + 2], "energy", r + 1));
    series.norm.push(parseFloatToken(cells[base + 3], "norm", r + 1));
  }
  return series;
}

export type EventKind = "dqpt_crossing" | "op_zero" | "rr_local_min";

export interface EventRecord {
  kind: EventKind;
  time: number;
  /** the decimal token exactly as serialized in events.json */
  rawTime: string;
  bracket: [number, number];
  fromMz?: string;
  toMz?: string;
  direction?: number;
  mz?: string;
  value?: number;
  major?: boolean;
}

export interface PairingRecord {
  opZeroTime: number;
  classification: string;
  partnerTimes: number[];
  timeDiscrepancy: number | null;
}

export interface EventsFile {
  events: EventRecord[];
  pairings: PairingRecord[];
  meta?: Record<string, unknown>;
}

export function parseEvents(text: string): EventsFile {
  let payload: any;
  try {
    payload = JSON.parse(text);
  } catch (err) {
    throw new SchemaError(`events file is not valid JSON: ${(err as Error).message}`);
  }
  if (!Array.isArray(payload?.events) || !Array.isArray(payload?.pairings)) {
    throw new SchemaError("events file must contain 'events' and 'pairings' lists");
  }
  // the "time" key appears once per event object, in document order
  const rawTimes = [...text.matchAll(/"time":\s*([-+0-9.eE]+)/g)].map((m) => m[1]);
  if (rawTimes.length !== payload.events.length) {
    throw new SchemaError(
      `found ${rawTimes.length} raw time tokens for ${payload.events.length} events`,
    );
  }
  const events: EventRecord[] = payload.events.map((e: any, i: number) => {
    if (e.kind !== "dqpt_crossing" && e.kind !== "op_zero" && e.kind !== "rr_local_min") {
      throw new SchemaError(`event ${i} has unknown kind ${JSON.stringify(e.kind)}`);
    }
    if (typeof e.time !== "number" || !Array.isArray(e.bracket)) {
      throw new SchemaError(`event ${i} is missing time/bracket`);
    }
    return {
      kind: e.kind,
      time: e.time,
      rawTime: rawTimes[i],
      bracket: [e.bracket[0], e.bracket[1]],
      fromMz: e.from_mz,
      toMz: e.to_mz,
      direction: e.direction,
      mz: e.mz,
      value: e.value,
      major: e.major,
    };
  });
  const pairings: PairingRecord[] = payload.pairings.map((p: any) => ({
    opZeroTime: p.op_zero_time,
    classification: p.classification,
    partnerTimes: p.partner_times ?? [],
    timeDiscrepancy: p.time_discrepancy ?? null,
  }));
  return { events, pairings, meta: payload.meta };
}
