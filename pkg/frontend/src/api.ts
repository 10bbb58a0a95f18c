/**
 * Thin typed client for the plknots service.
 *
 * The client never interprets domain data; it moves JSON and maps the
 * service's error envelope onto exceptions. Long-running queries that the
 * server answers with a 202 job ticket are polled here so callers always
 * get the final payload.
 */

import type {
  ApiErrorBody,
  AssignmentValue,
  ForcingPayload,
  JobPayload,
  JobTicket,
  MutationPayload,
  SessionPayload,
  SessionSource,
  WereSetPayload,
} from "./types.js";

export class ApiRequestError extends Error {
  readonly status: number;
  readonly code: string;
  readonly details: Record<string, unknown>;

  constructor(status: number, body: ApiErrorBody["error"]) {
    super(body.message);
    this.status = status;
    this.code = body.code;
    this.details = body.details ?? {};
  }
}

/** 409: someone else advanced the session; carries the server's revision. */
export class RevisionConflictError extends ApiRequestError {
  get serverRevision(): number {
    return Number(this.details["server_revision"]);
  }
}

export class JobFailedError extends Error {}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

const sleep = (ms: number) => new Promise((resolve) => setTimeout(resolve, ms));

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;
  /** Delay between job polls; tests shrink this. */
  pollIntervalMs = 100;

  constructor(baseUrl = "", fetchFn?: FetchLike) {
    this.base = baseUrl.replace(/\/$/, "");
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const response = await this.fetchFn(this.base + path, init);
    if (response.ok || response.status === 202) {
      return response;
    }
    let envelope: ApiErrorBody["error"] = {
      code: "unknown",
      message: `HTTP ${response.status}`,
      details: {},
    };
    try {
      envelope = ((await response.json()) as ApiErrorBody).error ?? envelope;
    } catch {
      // non-JSON error body; keep the fallback envelope
    }
    if (response.status === 409) {
      throw new RevisionConflictError(response.status, envelope);
    }
    throw new ApiRequestError(response.status, envelope);
  }

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.request(path, init);
    return (await response.json()) as T;
  }

  createSession(source: SessionSource): Promise<SessionPayload> {
    return this.json("/api/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(source),
    });
  }

  getSession(sid: string): Promise<SessionPayload> {
    return this.json(`/api/sessions/${sid}`);
  }

  /** Canonical document bytes, as text; byte-identical to the CLI's output. */
  async getDocument(sid: string): Promise<string> {
    const response = await this.request(`/api/sessions/${sid}/document`);
    return await response.text();
  }

  putCrossing(
    sid: string,
    cid: number,
    value: AssignmentValue | null,
    revision: number,
  ): Promise<MutationPayload> {
    return this.json(`/api/sessions/${sid}/crossings/${cid}`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ value, revision }),
    });
  }

  /** Runs through the job queue when the server decides to defer. */
  private async maybeJob<T>(path: string, onProgress?: (done: number, total: number) => void): Promise<T> {
    const response = await this.request(path);
    if (response.status !== 202) {
      return (await response.json()) as T;
    }
    const ticket = (await response.json()) as JobTicket;
    for (;;) {
      const job = await this.json<JobPayload>(`/api/jobs/${ticket.job}`);
      onProgress?.(job.progress.done, job.progress.total);
      if (job.status === "done") {
        return job.result as T;
      }
      if (job.status === "failed") {
        throw new JobFailedError(job.error ?? "job failed");
      }
      await sleep(this.pollIntervalMs);
    }
  }

  getWereSet(
    sid: string,
    mode: "pl" | "smooth",
    onProgress?: (done: number, total: number) => void,
  ): Promise<WereSetPayload> {
    return this.maybeJob(`/api/sessions/${sid}/wereset?mode=${mode}`, onProgress);
  }

  getForcingNumber(
    sid: string,
    onProgress?: (done: number, total: number) => void,
  ): Promise<ForcingPayload> {
    return this.maybeJob(`/api/sessions/${sid}/forcing-number`, onProgress);
  }
}
