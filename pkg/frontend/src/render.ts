/**
 * Diagram rendering: session payload -> display list -> SVG.
 *
 * The display list is pure data so tests can assert on structure without a
 * DOM. Rationals become floats here and only here; nothing computed in this
 * module feeds back into any decision, it is pixels only.
 *
 * Conventions: unassigned crossings are solid dots; at an assigned or
 * forced crossing the under-strand edge is drawn with a gap around the
 * intersection point; forced crossings and core members get their own CSS
 * classes so the stylesheet can highlight them.
 */

import type { CrossingView } from "./state.js";
import type { Rational, SessionPayload } from "./types.js";

export class RenderPayloadError extends Error {}

export function parseRational(text: Rational): number {
  const match = /^(-?\d+)(?:\/(\d+))?$/.exec(text);
  if (!match || match[1] === undefined) {
    throw new RenderPayloadError(`not a rational: ${JSON.stringify(text)}`);
  }
  const p = Number(match[1]);
  const q = match[2] === undefined ? 1 : Number(match[2]);
  if (q === 0) {
    throw new RenderPayloadError(`zero denominator: ${text}`);
  }
  return p / q;
}

export interface Segment {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface Dot {
  cid: number;
  x: number;
  y: number;
  /** e.g. ["crossing", "precrossing"] or ["crossing", "user", "core"] */
  classes: string[];
}

export interface DisplayList {
  segments: Segment[];
  dots: Dot[];
  vertices: { x: number; y: number }[];
  viewBox: { x: number; y: number; width: number; height: number };
}

interface Cut {
  param: number;
  halfWidth: number;
}

/** Fraction of the bounding-box diagonal used for an under-strand gap. */
const GAP_RATIO = 0.02;

export function buildDisplayList(
  session: SessionPayload,
  crossingViews?: CrossingView[],
): DisplayList {
  if (!Array.isArray(session.vertices) || session.vertices.length < 3) {
    throw new RenderPayloadError("session payload has no polygon");
  }
  const points = session.vertices.map(([x, y]) => ({
    x: parseRational(x),
    y: parseRational(y),
  }));
  const n = points.length;

  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const diag = Math.hypot(maxX - minX, maxY - minY) || 1;
  const gap = diag * GAP_RATIO;

  const viewByCid = new Map<number, CrossingView>(
    (crossingViews ?? []).map((view) => [view.cid, view]),
  );

  // Collect the gaps each edge needs where it passes under.
  const cutsPerEdge = new Map<number, Cut[]>();
  for (const crossing of session.crossings ?? []) {
    const view = viewByCid.get(crossing.id);
    const value = view?.value ?? null;
    if (value === null) {
      continue;
    }
    const underEdge = value === "first_over" ? crossing.edge_b : crossing.edge_a;
    const underParam = value === "first_over" ? crossing.t : crossing.s;
    const a = points[underEdge % n]!;
    const b = points[(underEdge + 1) % n]!;
    const length = Math.hypot(b.x - a.x, b.y - a.y);
    const cuts = cutsPerEdge.get(underEdge) ?? [];
    cuts.push({ param: parseRational(underParam), halfWidth: gap / length });
    cutsPerEdge.set(underEdge, cuts);
  }

  const segments: Segment[] = [];
  for (let edge = 0; edge < n; edge += 1) {
    const a = points[edge]!;
    const b = points[(edge + 1) % n]!;
    const cuts = (cutsPerEdge.get(edge) ?? []).sort((u, v) => u.param - v.param);
    let start = 0;
    const spans: [number, number][] = [];
    for (const cut of cuts) {
      const lo = Math.max(0, cut.param - cut.halfWidth);
      const hi = Math.min(1, cut.param + cut.halfWidth);
      if (lo > start) {
        spans.push([start, lo]);
      }
      start = Math.max(start, hi);
    }
    if (start < 1) {
      spans.push([start, 1]);
    }
    for (const [t0, t1] of spans) {
      segments.push({
        x1: a.x + (b.x - a.x) * t0,
        y1: a.y + (b.y - a.y) * t0,
        x2: a.x + (b.x - a.x) * t1,
        y2: a.y + (b.y - a.y) * t1,
      });
    }
  }

  const dots: Dot[] = (session.crossings ?? []).map((crossing) => {
    const view = viewByCid.get(crossing.id);
    const classes = ["crossing"];
    if (!view || view.role === "open") {
      classes.push("precrossing");
    } else {
      classes.push(view.role);
    }
    if (view?.inCore) {
      classes.push("core");
    }
    const [px, py] = crossing.point;
    return {
      cid: crossing.id,
      x: parseRational(px),
      y: parseRational(py),
      classes,
    };
  });

  const pad = diag * 0.05;
  return {
    segments,
    dots,
    vertices: points,
    viewBox: {
      x: minX - pad,
      y: minY - pad,
      width: maxX - minX + 2 * pad,
      height: maxY - minY + 2 * pad,
    },
  };
}

const fmt = (value: number): string => Number(value.toFixed(3)).toString();

/** Standalone SVG document for the display list (y flipped to math-up). */
export function toSvg(dl: DisplayList): string {
  const { x, y, width, height } = dl.viewBox;
  const dotRadius = Math.max(width, height) * 0.012;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="${fmt(x)} ${fmt(-y - height)} ${fmt(width)} ${fmt(height)}">`,
  );
  parts.push(`<g class="diagram">`);
  for (const s of dl.segments) {
    parts.push(
      `<line class="strand" x1="${fmt(s.x1)}" y1="${fmt(-s.y1)}" x2="${fmt(s.x2)}" y2="${fmt(-s.y2)}"/>`,
    );
  }
  for (const dot of dl.dots) {
    parts.push(
      `<circle class="${dot.classes.join(" ")}" data-cid="${dot.cid}" cx="${fmt(dot.x)}" cy="${fmt(-dot.y)}" r="${fmt(dotRadius)}"/>`,
    );
  }
  parts.push(`</g>`);
  parts.push(`</svg>`);
  return parts.join("");
}
