import { describe, expect, it } from "vitest";
import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

import { forcingSummary, heightRows, jobProgressText, wereRows } from "../src/panels.js";
import type { ForcingPayload, WereSetPayload } from "../src/types.js";

const fixture = <T>(name: string): T =>
  JSON.parse(
    readFileSync(fileURLToPath(new URL(`./fixtures/${name}.json`, import.meta.url)), "utf8"),
  ) as T;

describe("wereRows", () => {
  it("passes probabilities through verbatim with the empty mass last", () => {
    const rows = wereRows(fixture<WereSetPayload>("wereset_pentagram_pl"));
    expect(rows).toEqual([
      { label: "0_1", probability: "5/16" },
      { label: "∅", probability: "11/16" },
    ]);
  });

  it("sorts knot classes by name", () => {
    const rows = wereRows({
      mode: "smooth",
      entries: { "5_1": "1/16", "0_1": "5/8", "3_1": "5/16" },
    });
    expect(rows.map((r) => r.label)).toEqual(["0_1", "3_1", "5_1"]);
  });

  it("handles a certain diagram with no empty mass", () => {
    expect(wereRows({ mode: "smooth", entries: { "0_1": "1" } })).toEqual([
      { label: "0_1", probability: "1" },
    ]);
  });
});

describe("forcingSummary", () => {
  it("formats the recorded pentagram report with a replayable witness", () => {
    const summary = forcingSummary(fixture<ForcingPayload>("forcing_pentagram"));
    expect(summary.text).toBe("f(D) = 2");
    expect(summary.vacuous).toBe(false);
    expect(summary.witness).toEqual([
      { cid: 0, value: "first_over" },
      { cid: 1, value: "second_over" },
    ]);
  });

  it("reports an unresolved cap as unknown", () => {
    const summary = forcingSummary({
      forcing_number: null,
      witness_set: null,
      witness_assignment: null,
      derived: null,
      vacuous: false,
    });
    expect(summary.text).toContain("?");
    expect(summary.witness).toEqual([]);
  });

  it("sorts witness clicks by crossing id", () => {
    const summary = forcingSummary({
      forcing_number: 2,
      witness_set: [3, 1],
      witness_assignment: { "3": "first_over", "1": "second_over" },
      derived: [],
      vacuous: false,
    });
    expect(summary.witness.map((w) => w.cid)).toEqual([1, 3]);
  });
});

describe("heightRows", () => {
  it("orders heights by vertex index", () => {
    const rows = heightRows({ "10": "21/2", "2": "3", "0": "1/4" });
    expect(rows).toEqual([
      { label: "z_0", value: "1/4" },
      { label: "z_2", value: "3" },
      { label: "z_10", value: "21/2" },
    ]);
  });

  it("is empty when there is no witness", () => {
    expect(heightRows(null)).toEqual([]);
  });
});

describe("jobProgressText", () => {
  it("shows done/total once the total is known", () => {
    expect(jobProgressText(7, 32)).toBe("7/32");
    expect(jobProgressText(0, 0)).toBe("…");
  });
});
