/**
 * Panel view-models: WeRe-set table, forcing readout, witness heights.
 *
 * Probabilities and heights are exact "p/q" strings from the service and
 * are passed through verbatim; this module only orders and labels them.
 */

import type { ForcingPayload, Rational, WereSetPayload } from "./types.js";

export interface WereRow {
  label: string;
  probability: Rational;
}

/** Knot classes sorted by name with the non-realizable mass last as "∅". */
export function wereRows(payload: WereSetPayload): WereRow[] {
  const rows: WereRow[] = [];
  let empty: Rational | null = null;
  for (const [name, probability] of Object.entries(payload.entries)) {
    if (name === "empty") {
      empty = probability;
    } else {
      rows.push({ label: name, probability });
    }
  }
  rows.sort((a, b) => (a.label < b.label ? -1 : a.label > b.label ? 1 : 0));
  if (empty !== null) {
    rows.push({ label: "∅", probability: empty });
  }
  return rows;
}

export interface ForcingSummary {
  text: string;
  /** Replayable witness clicks in crossing-id order; empty when none. */
  witness: { cid: number; value: "first_over" | "second_over" }[];
  vacuous: boolean;
}

export function forcingSummary(payload: ForcingPayload): ForcingSummary {
  if (payload.forcing_number === null) {
    return { text: "f(D) = ? (no forcing set within the size cap)", witness: [], vacuous: false };
  }
  const witness = Object.entries(payload.witness_assignment ?? {})
    .map(([cid, value]) => ({ cid: Number(cid), value }))
    .sort((a, b) => a.cid - b.cid);
  return {
    text: `f(D) = ${payload.forcing_number}`,
    witness,
    vacuous: payload.vacuous,
  };
}

export interface HeightRow {
  label: string;
  value: Rational;
}

/** Witness heights listed per vertex in index order. */
export function heightRows(witness: Record<string, Rational> | null): HeightRow[] {
  if (!witness) {
    return [];
  }
  return Object.entries(witness)
    .map(([index, value]) => ({ index: Number(index), value }))
    .sort((a, b) => a.index - b.index)
    .map(({ index, value }) => ({ label: `z_${index}`, value }));
}

export function jobProgressText(done: number, total: number): string {
  return total > 0 ? `${done}/${total}` : "…";
}
