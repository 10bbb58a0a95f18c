/**
 * Wire types for the plknots HTTP API.
 *
 * Every number that is exact on the server travels as a reduced "p/q"
 * string; the UI displays those verbatim and only converts to floats for
 * screen coordinates.
 */

export type AssignmentValue = "first_over" | "second_over";

/** Rational as a reduced "p/q" (or plain "p") string. */
export type Rational = string;

export interface CrossingInfo {
  id: number;
  edge_a: number;
  edge_b: number;
  /** Intersection parameter along edge_a. */
  s: Rational;
  /** Intersection parameter along edge_b. */
  t: Rational;
  point: [Rational, Rational];
}

export interface SessionPayload {
  id: string;
  revision: number;
  vertices: [Rational, Rational][];
  crossings: CrossingInfo[];
  assignments: Record<string, AssignmentValue>;
  precrossings: number[];
}

export type PropagationStatus = "completed" | "stuck" | "contradiction";

export interface PropagationInfo {
  status: PropagationStatus;
  derived: [number, AssignmentValue][];
  remaining: number[];
}

export interface MutationPayload {
  revision: number;
  assignments: Record<string, AssignmentValue>;
  precrossings: number[];
  realizable: boolean;
  witness: Record<string, Rational> | null;
  propagation: PropagationInfo;
  core: number[] | null;
}

export interface WereSetPayload {
  mode: "pl" | "smooth";
  /** Knot class name (or "empty") to probability, verbatim rationals. */
  entries: Record<string, Rational>;
}

export interface ForcingPayload {
  forcing_number: number | null;
  witness_set: number[] | null;
  witness_assignment: Record<string, AssignmentValue> | null;
  vacuous: boolean;
  derived: [number, AssignmentValue][] | null;
}

export interface JobTicket {
  job: string;
  status_url: string;
}

export interface JobPayload {
  status: "running" | "done" | "failed";
  progress: { done: number; total: number };
  result: unknown;
  error: string | null;
}

export interface ApiErrorBody {
  error: {
    code: string;
    message: string;
    details: Record<string, unknown>;
  };
}

export type SessionSource =
  | { generator: { kind: "star"; n: number } }
  | { generator: { kind: "torus"; n: number; subdiv: number } }
  | { generator: { kind: "random"; vertices: number; seed: number } }
  | { document: unknown };
