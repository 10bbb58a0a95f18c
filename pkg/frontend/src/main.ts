/**
 * Browser bootstrap: wires the session store, renderer and panels into the
 * static page served by `plknots serve --static-dir`.
 */

import { ApiClient, ApiRequestError, JobFailedError } from "./api.js";
import { forcingSummary, heightRows, jobProgressText, wereRows } from "./panels.js";
import { buildDisplayList, RenderPayloadError, toSvg } from "./render.js";
import { SessionStore } from "./state.js";
import type { SessionSource } from "./types.js";

const api = new ApiClient("");
let store: SessionStore | null = null;

const el = <T extends HTMLElement>(id: string): T => {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing #${id}`);
  }
  return node as T;
};

function banner(message: string | null): void {
  const box = el<HTMLDivElement>("banner");
  box.textContent = message ?? "";
  box.style.display = message ? "block" : "none";
}

function describeError(error: unknown): string {
  if (error instanceof JobFailedError) {
    return `background job failed: ${error.message}`;
  }
  if (error instanceof ApiRequestError) {
    return `${error.code}: ${error.message}`;
  }
  if (error instanceof RenderPayloadError) {
    return `bad payload: ${error.message}`;
  }
  return String(error);
}

function renderDiagram(): void {
  if (!store) {
    return;
  }
  const view = store.view();
  try {
    const dl = buildDisplayList(store.payload, view.crossings);
    el<HTMLDivElement>("diagram").innerHTML = toSvg(dl);
  } catch (error) {
    banner(describeError(error));
    return;
  }

  const status = el<HTMLDivElement>("status");
  if (view.realizable === null) {
    status.textContent = `revision ${view.revision}`;
    status.className = "";
  } else if (view.realizable) {
    status.textContent = `realizable (propagation: ${view.propagationStatus})`;
    status.className = "ok";
  } else {
    status.textContent = `NOT realizable — core: {${view.core.join(", ")}}`;
    status.className = "bad";
  }
  el<HTMLButtonElement>("undo").style.display =
    view.realizable === false ? "inline-block" : "none";

  const heights = heightRows(view.witness);
  el<HTMLDivElement>("heights").innerHTML = heights.length
    ? heights.map((row) => `<div>${row.label} = ${row.value}</div>`).join("")
    : "<div class=\"dim\">no height witness</div>";

  for (const dot of el<HTMLDivElement>("diagram").querySelectorAll("circle.crossing")) {
    dot.addEventListener("click", () => {
      const cid = Number((dot as SVGCircleElement).dataset["cid"]);
      void handleClick(cid);
    });
  }
}

async function handleClick(cid: number): Promise<void> {
  if (!store) {
    return;
  }
  banner(null);
  try {
    const result = await store.cycle(cid);
    if (result.status === "conflict") {
      banner(`concurrent edit detected; reloaded revision ${store.revision}`);
    }
  } catch (error) {
    banner(describeError(error));
  }
  renderDiagram();
}

async function refreshWereSet(mode: "pl" | "smooth"): Promise<void> {
  if (!store) {
    return;
  }
  const table = el<HTMLDivElement>("wereset");
  table.innerHTML = "<div class=\"dim\">computing…</div>";
  try {
    const payload = await api.getWereSet(store.id, mode, (done, total) => {
      table.innerHTML = `<div class="dim">computing ${jobProgressText(done, total)}</div>`;
    });
    const rows = wereRows(payload);
    table.innerHTML =
      `<div class="dim">${payload.mode} mode</div>` +
      rows
        .map((row) => `<div><span class="knot">${row.label}</span>: ${row.probability}</div>`)
        .join("");
  } catch (error) {
    table.innerHTML = "";
    banner(describeError(error));
  }
}

async function refreshForcing(): Promise<void> {
  if (!store) {
    return;
  }
  const box = el<HTMLDivElement>("forcing");
  box.innerHTML = "<div class=\"dim\">computing…</div>";
  try {
    const summary = forcingSummary(await api.getForcingNumber(store.id));
    box.innerHTML = `<div>${summary.text}${summary.vacuous ? " (vacuous)" : ""}</div>`;
    if (summary.witness.length) {
      const button = document.createElement("button");
      button.textContent =
        "replay witness: " +
        summary.witness.map((w) => `${w.cid}→${w.value === "first_over" ? "over" : "under"}`).join(", ");
      button.addEventListener("click", () => void replayWitness(summary.witness));
      box.appendChild(button);
    }
  } catch (error) {
    box.innerHTML = "";
    banner(describeError(error));
  }
}

async function replayWitness(
  witness: { cid: number; value: "first_over" | "second_over" }[],
): Promise<void> {
  if (!store) {
    return;
  }
  for (const move of witness) {
    await store.set(move.cid, move.value);
  }
  renderDiagram();
}

async function newSession(source: SessionSource): Promise<void> {
  banner(null);
  try {
    store = await SessionStore.create(api, source);
    el<HTMLDivElement>("wereset").innerHTML = "";
    el<HTMLDivElement>("forcing").innerHTML = "";
    renderDiagram();
  } catch (error) {
    banner(describeError(error));
  }
}

function wire(): void {
  el<HTMLButtonElement>("new-star").addEventListener("click", () => {
    const n = Number(el<HTMLInputElement>("star-n").value) || 5;
    void newSession({ generator: { kind: "star", n } });
  });
  el<HTMLButtonElement>("new-torus").addEventListener("click", () => {
    const n = Number(el<HTMLInputElement>("torus-n").value) || 3;
    void newSession({ generator: { kind: "torus", n, subdiv: 2 } });
  });
  el<HTMLButtonElement>("new-random").addEventListener("click", () => {
    const vertices = Number(el<HTMLInputElement>("random-v").value) || 6;
    const seed = Math.floor(Math.random() * 2 ** 31);
    void newSession({ generator: { kind: "random", vertices, seed } });
  });
  el<HTMLButtonElement>("were-pl").addEventListener("click", () => void refreshWereSet("pl"));
  el<HTMLButtonElement>("were-smooth").addEventListener("click", () => void refreshWereSet("smooth"));
  el<HTMLButtonElement>("forcing-btn").addEventListener("click", () => void refreshForcing());
  el<HTMLButtonElement>("undo").addEventListener("click", () => {
    void store?.undo().then(() => renderDiagram());
  });
  el<HTMLButtonElement>("export").addEventListener("click", async () => {
    if (!store) {
      return;
    }
    const text = await store.exportDocument();
    const blob = new Blob([text], { type: "application/json" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = "shadow.json";
    link.click();
    URL.revokeObjectURL(link.href);
  });
  void newSession({ generator: { kind: "star", n: 5 } });
}

wire();
