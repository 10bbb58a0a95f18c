import { describe, expect, it } from "vitest";
import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

import {
  buildDisplayList,
  parseRational,
  RenderPayloadError,
  toSvg,
} from "../src/render.js";
import { SessionStore, type SessionApi } from "../src/state.js";
import type { MutationPayload, SessionPayload } from "../src/types.js";

const fixture = <T>(name: string): T =>
  JSON.parse(
    readFileSync(fileURLToPath(new URL(`./fixtures/${name}.json`, import.meta.url)), "utf8"),
  ) as T;

const offline: SessionApi = {
  createSession: () => Promise.reject(new Error("offline")),
  getSession: () => Promise.reject(new Error("offline")),
  putCrossing: () => Promise.reject(new Error("offline")),
  getDocument: () => Promise.reject(new Error("offline")),
};

const freshSession = (): SessionPayload => fixture<SessionPayload>("session_pentagram_fresh");

/** Store whose next click lands it exactly in the recorded post-mutation state. */
async function storeAfter(mutation: MutationPayload): Promise<SessionStore> {
  const api: SessionApi = { ...offline, putCrossing: () => Promise.resolve(mutation) };
  const store = new SessionStore(api, freshSession());
  await store.set(0, "first_over");
  return store;
}

describe("parseRational", () => {
  it("parses integers and fractions", () => {
    expect(parseRational("3")).toBe(3);
    expect(parseRational("-8090")).toBe(-8090);
    expect(parseRational("1/2")).toBe(0.5);
    expect(parseRational("-9511/2")).toBe(-4755.5);
  });

  it("rejects junk", () => {
    expect(() => parseRational("a/b")).toThrow(RenderPayloadError);
    expect(() => parseRational("1/0")).toThrow(RenderPayloadError);
    expect(() => parseRational("")).toThrow(RenderPayloadError);
  });
});

describe("buildDisplayList", () => {
  it("fresh pentagram: five solid dots, five unbroken edges", () => {
    const store = new SessionStore(offline, freshSession());
    const dl = buildDisplayList(freshSession(), store.view().crossings);
    expect(dl.dots).toHaveLength(5);
    expect(dl.dots.every((d) => d.classes.includes("precrossing"))).toBe(true);
    // no assignments yet, so no gaps: one segment per polygon edge
    expect(dl.segments).toHaveLength(5);
  });

  it("after the recorded clicks: user and forced marks, gaps on under-edges", async () => {
    const store = await storeAfter(fixture<MutationPayload>("mutation_after_click2"));
    const dl = buildDisplayList(store.payload, store.view().crossings);

    const byClass = (cls: string) => dl.dots.filter((d) => d.classes.includes(cls));
    expect(byClass("user")).toHaveLength(2);
    expect(byClass("forced")).toHaveLength(3);
    expect(byClass("precrossing")).toHaveLength(0);

    // every crossing now has an effective value, so each cuts one gap into
    // its under-edge: 5 edges split once each = 10 segments
    expect(dl.segments).toHaveLength(10);
  });

  it("flags the recorded infeasible core", async () => {
    const mutation = fixture<MutationPayload>("mutation_contradiction");
    const store = await storeAfter(mutation);
    const dl = buildDisplayList(store.payload, store.view().crossings);
    const flagged = dl.dots.filter((d) => d.classes.includes("core")).map((d) => d.cid);
    expect(flagged).toEqual(mutation.core);
  });

  it("rejects malformed payloads", () => {
    expect(() => buildDisplayList({ vertices: [] } as unknown as SessionPayload)).toThrow(
      RenderPayloadError,
    );
    const bad = freshSession();
    bad.vertices[0] = ["not-a-number", "0"];
    expect(() => buildDisplayList(bad)).toThrow(RenderPayloadError);
  });
});

describe("toSvg", () => {
  it("emits clickable circles with crossing ids and classes", () => {
    const base = freshSession();
    const store = new SessionStore(offline, base);
    const svg = toSvg(buildDisplayList(base, store.view().crossings));
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg.match(/<circle /g)).toHaveLength(5);
    expect(svg).toContain('data-cid="0"');
    expect(svg).toContain('class="crossing precrossing"');
    expect(svg.match(/<line /g)).toHaveLength(5);
  });
});
