/**
 * End-to-end checks against the real service, spawned from the installed
 * Python package. Everything the explorer shows is compared against the
 * same facts obtained through the batch CLI, so the two front doors of the
 * library cannot drift apart silently.
 */

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { ApiClient, RevisionConflictError } from "../src/api.js";
import { SessionStore } from "../src/state.js";

const PORT = 18000 + Math.floor(Math.random() * 20000);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess | null = null;
let serverStderr = "";

async function waitForService(): Promise<void> {
  const deadline = Date.now() + 20_000;
  for (;;) {
    try {
      const res = await fetch(`${BASE}/api/sessions/nope`);
      if (res.status === 404) {
        return;
      }
    } catch {
      // not listening yet
    }
    if (server?.exitCode !== null && server?.exitCode !== undefined) {
      throw new Error(`service exited early (${server.exitCode}): ${serverStderr}`);
    }
    if (Date.now() > deadline) {
      throw new Error(`service never came up on ${BASE}: ${serverStderr}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
}

beforeAll(async () => {
  // threshold 2 pushes even pentagram-sized queries through the job queue,
  // so the polling path gets exercised end to end
  server = spawn(
    "python3",
    ["-m", "plknots.cli", "serve", "--port", String(PORT), "--inline-threshold", "2"],
    { stdio: ["ignore", "ignore", "pipe"] },
  );
  server.stderr?.on("data", (chunk: Buffer) => {
    serverStderr += chunk.toString();
  });
  await waitForService();
}, 30_000);

afterAll(() => {
  server?.kill("SIGTERM");
});

function client(): ApiClient {
  const api = new ApiClient(BASE);
  api.pollIntervalMs = 25;
  return api;
}

describe("explorer against the live service", () => {
  it("replays the two-click forced completion and exports the matching document", async () => {
    const api = client();
    const store = await SessionStore.create(api, { generator: { kind: "star", n: 5 } });
    expect(store.payload.crossings).toHaveLength(5);
    expect(store.revision).toBe(0);

    const first = await store.set(0, "first_over");
    expect(first.status).toBe("ok");
    if (first.status !== "ok") throw new Error("unreachable");
    expect(first.mutation.propagation.status).toBe("stuck");
    expect(first.mutation.realizable).toBe(true);

    const second = await store.set(1, "second_over");
    expect(second.status).toBe("ok");
    if (second.status !== "ok") throw new Error("unreachable");
    expect(second.mutation.propagation.status).toBe("completed");
    expect(second.mutation.realizable).toBe(true);
    expect(second.mutation.propagation.derived).toEqual([
      [2, "second_over"],
      [3, "second_over"],
      [4, "second_over"],
    ]);

    const view = store.view();
    expect(view.crossings.filter((c) => c.role === "user").map((c) => c.cid)).toEqual([0, 1]);
    expect(view.crossings.filter((c) => c.role === "forced").map((c) => c.cid)).toEqual([2, 3, 4]);
    expect(view.crossings.every((c) => c.value !== null)).toBe(true);
    expect(view.core).toEqual([]);

    // the exported session document must be byte-identical to what the
    // batch CLI writes for the same shadow and assignments
    const dir = mkdtempSync(join(tmpdir(), "plknots-it-"));
    try {
      const base = join(dir, "base.json");
      const assigned = join(dir, "assigned.json");
      execFileSync("python3", ["-m", "plknots.cli", "gen", "star", "--n", "5", "-o", base]);
      execFileSync("python3", [
        "-m",
        "plknots.cli",
        "assign",
        base,
        "--set",
        "0=first_over,1=second_over",
        "-o",
        assigned,
      ]);
      expect(await store.exportDocument()).toBe(readFileSync(assigned, "utf8"));
    } finally {
      rmSync(dir, { recursive: true, force: true });
    }
  }, 20_000);

  it("fetches the WeRe-set through the job queue with progress updates", async () => {
    const api = client();
    const store = await SessionStore.create(api, { generator: { kind: "star", n: 5 } });

    const updates: [number, number][] = [];
    const payload = await api.getWereSet(store.id, "pl", (done, total) => {
      updates.push([done, total]);
    });

    expect(payload.mode).toBe("pl");
    expect(payload.entries).toEqual({ "0_1": "5/16", empty: "11/16" });
    // progress callbacks only fire on the deferred path, so their presence
    // proves the 202 ticket + poll loop actually ran
    expect(updates.length).toBeGreaterThan(0);
    expect(updates[updates.length - 1]).toEqual([32, 32]);
  }, 20_000);

  it("reports the forcing number with a replayable witness", async () => {
    const api = client();
    const store = await SessionStore.create(api, { generator: { kind: "star", n: 5 } });

    const payload = await api.getForcingNumber(store.id);
    expect(payload.forcing_number).toBe(2);
    expect(payload.witness_set).toEqual([0, 1]);

    // replaying the witness clicks must force everything that remains
    const witness = Object.entries(payload.witness_assignment ?? {}).sort(
      (a, b) => Number(a[0]) - Number(b[0]),
    );
    let last = null;
    for (const [cid, value] of witness) {
      const result = await store.set(Number(cid), value);
      expect(result.status).toBe("ok");
      if (result.status === "ok") last = result.mutation;
    }
    expect(last?.propagation.status).toBe("completed");
    expect(last?.propagation.remaining).toEqual([]);
  }, 20_000);

  it("resolves concurrent edits through the revision protocol", async () => {
    const api = client();
    const store = await SessionStore.create(api, { generator: { kind: "star", n: 5 } });

    // someone else advances the session behind the store's back
    await api.putCrossing(store.id, 3, "first_over", store.revision);
    expect(store.revision).toBe(0);

    const result = await store.set(0, "first_over");
    expect(result).toEqual({ status: "conflict", serverRevision: 1 });
    // the store refetched: it now sees the other client's assignment
    expect(store.revision).toBe(1);
    expect(store.assignmentOf(3)).toBe("first_over");

    // a direct stale PUT surfaces the typed conflict error
    await expect(api.putCrossing(store.id, 0, "first_over", 0)).rejects.toBeInstanceOf(
      RevisionConflictError,
    );
  }, 20_000);
});
