/**
 * Session state for one explorer tab.
 *
 * The server is the source of truth: the store never computes
 * realizability, forcing, or cores itself; it only replays what the last
 * service response said. Mutations are serialized through the session's
 * revision token, and a stale-revision conflict resolves by refetching.
 */

import { RevisionConflictError } from "./api.js";
import type {
  AssignmentValue,
  MutationPayload,
  SessionPayload,
  SessionSource,
} from "./types.js";

/** The slice of the HTTP client the store needs; tests inject recordings. */
export interface SessionApi {
  createSession(source: SessionSource): Promise<SessionPayload>;
  getSession(sid: string): Promise<SessionPayload>;
  putCrossing(
    sid: string,
    cid: number,
    value: AssignmentValue | null,
    revision: number,
  ): Promise<MutationPayload>;
  getDocument(sid: string): Promise<string>;
}

/** Click cycle at a crossing: open -> first_over -> second_over -> open. */
export function nextValue(current: AssignmentValue | null): AssignmentValue | null {
  switch (current) {
    case null:
      return "first_over";
    case "first_over":
      return "second_over";
    case "second_over":
      return null;
  }
}

export type CrossingRole = "user" | "forced" | "open";

export interface CrossingView {
  cid: number;
  /** What the diagram shows: the user's value, the server-derived forced
   *  value, or null for a genuine precrossing dot. */
  value: AssignmentValue | null;
  role: CrossingRole;
  inCore: boolean;
}

export interface SessionView {
  revision: number;
  crossings: CrossingView[];
  /** null until the first mutation response arrives. */
  realizable: boolean | null;
  witness: Record<string, string> | null;
  propagationStatus: "completed" | "stuck" | "contradiction" | null;
  core: number[];
}

export type CycleResult =
  | { status: "ok"; mutation: MutationPayload }
  | { status: "conflict"; serverRevision: number };

interface HistoryEntry {
  cid: number;
  previous: AssignmentValue | null;
}

export class SessionStore {
  private session: SessionPayload;
  private lastMutation: MutationPayload | null = null;
  private readonly history: HistoryEntry[] = [];

  constructor(
    private readonly api: SessionApi,
    session: SessionPayload,
  ) {
    this.session = session;
  }

  static async create(api: SessionApi, source: SessionSource): Promise<SessionStore> {
    return new SessionStore(api, await api.createSession(source));
  }

  get id(): string {
    return this.session.id;
  }

  get revision(): number {
    return this.session.revision;
  }

  get payload(): SessionPayload {
    return this.session;
  }

  get mutation(): MutationPayload | null {
    return this.lastMutation;
  }

  assignmentOf(cid: number): AssignmentValue | null {
    return this.session.assignments[String(cid)] ?? null;
  }

  private applyMutation(payload: MutationPayload): void {
    this.session = {
      ...this.session,
      revision: payload.revision,
      assignments: payload.assignments,
      precrossings: payload.precrossings,
    };
    this.lastMutation = payload;
  }

  /** One click on a crossing dot; resolves conflicts by refetching. */
  async cycle(cid: number): Promise<CycleResult> {
    return this.set(cid, nextValue(this.assignmentOf(cid)));
  }

  async set(cid: number, value: AssignmentValue | null): Promise<CycleResult> {
    const previous = this.assignmentOf(cid);
    try {
      const mutation = await this.api.putCrossing(
        this.session.id,
        cid,
        value,
        this.session.revision,
      );
      this.history.push({ cid, previous });
      this.applyMutation(mutation);
      return { status: "ok", mutation };
    } catch (error) {
      if (error instanceof RevisionConflictError) {
        await this.refetch();
        return { status: "conflict", serverRevision: error.serverRevision };
      }
      throw error;
    }
  }

  /** Reverts the most recent click (the undo affordance after a bad move). */
  async undo(): Promise<CycleResult | null> {
    const entry = this.history.pop();
    if (!entry) {
      return null;
    }
    const result = await this.set(entry.cid, entry.previous);
    if (result.status === "ok") {
      // set() pushed the revert as a new history entry; drop it so undo
      // walks strictly backwards.
      this.history.pop();
    }
    return result;
  }

  async refetch(): Promise<void> {
    this.session = await this.api.getSession(this.session.id);
    this.lastMutation = null;
  }

  /** Everything the renderer needs, straight from server responses. */
  view(): SessionView {
    const derived = new Map<number, AssignmentValue>(
      this.lastMutation?.propagation.derived ?? [],
    );
    const core = this.lastMutation?.core ?? [];
    const crossings: CrossingView[] = this.session.crossings.map((crossing) => {
      const user = this.assignmentOf(crossing.id);
      if (user !== null) {
        return {
          cid: crossing.id,
          value: user,
          role: "user" as const,
          inCore: core.includes(crossing.id),
        };
      }
      const forced = derived.get(crossing.id) ?? null;
      return {
        cid: crossing.id,
        value: forced,
        role: forced !== null ? ("forced" as const) : ("open" as const),
        inCore: core.includes(crossing.id),
      };
    });
    return {
      revision: this.session.revision,
      crossings,
      realizable: this.lastMutation?.realizable ?? null,
      witness: this.lastMutation?.witness ?? null,
      propagationStatus: this.lastMutation?.propagation.status ?? null,
      core,
    };
  }

  exportDocument(): Promise<string> {
    return this.api.getDocument(this.session.id);
  }
}
