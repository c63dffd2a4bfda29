import { ApiClient } from "./api.js";
import {
  comparisonTableHtml,
  graphSvg,
  legendHtml,
  statusLine,
} from "./render.js";
import {
  ExplorerState,
  applyGraph,
  exportGraphText,
  initialState,
  toggleSelection,
} from "./state.js";
import { ApiRequestError } from "./types.js";

const API_BASE =
  new URLSearchParams(window.location.search).get("api") ??
  "http://127.0.0.1:8765";

const api = new ApiClient(API_BASE);
const state: ExplorerState = initialState();

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function banner(message: string | null): void {
  const box = el<HTMLDivElement>("banner");
  if (!message) {
    box.hidden = true;
    return;
  }
  box.hidden = false;
  el<HTMLSpanElement>("banner-text").textContent = message;
}

function describeError(err: unknown): string {
  if (err instanceof ApiRequestError) {
    return `${err.code}: ${err.message}`;
  }
  return String(err);
}

function renderGraph(): void {
  const host = el<HTMLDivElement>("graph");
  if (!state.graph || !state.positions) {
    host.innerHTML = '<p class="placeholder">upload a dataset to begin</p>';
    return;
  }
  host.innerHTML = graphSvg(
    state.graph,
    state.positions,
    state.coloring,
    state.groupA,
    state.groupB,
  );
  el<HTMLDivElement>("legend").innerHTML = legendHtml(state.coloring);
  el<HTMLDivElement>("status").textContent = statusLine(state);
  el<HTMLSpanElement>("selection-a").textContent = [...state.groupA].join(", ") || "none";
  el<HTMLSpanElement>("selection-b").textContent = [...state.groupB].join(", ") || "none";
  for (const circle of host.querySelectorAll<SVGCircleElement>("circle.ball")) {
    circle.addEventListener("click", (event) => {
      const ballId = Number(circle.dataset.ball);
      toggleSelection(state, ballId, event.shiftKey ? "B" : "A");
      renderGraph();
    });
  }
}

async function rebuild(): Promise<void> {
  if (!state.sessionId) return;
  banner(null);
  try {
    const result = await api.buildGraph(state.sessionId, state.epsilon, state.seed);
    if (result === null) return; // superseded by a newer slider value
    applyGraph(state, result.raw, result.doc);
    const layout = await api.layout(
      state.sessionId,
      state.epsilon,
      state.seed,
      state.layoutSeed,
    );
    state.positions = layout.positions;
    renderGraph();
  } catch (err) {
    banner(describeError(err));
  }
}

async function recolor(body: Record<string, unknown>): Promise<void> {
  if (!state.sessionId || !state.graph) return;
  banner(null);
  try {
    state.coloring = await api.coloring(state.sessionId, {
      graph: { epsilon: state.epsilon, seed: state.seed },
      ...body,
    });
    renderGraph();
  } catch (err) {
    banner(describeError(err));
  }
}

function wire(): void {
  el<HTMLButtonElement>("banner-close").addEventListener("click", () => banner(null));

  el<HTMLButtonElement>("upload").addEventListener("click", async () => {
    const file = el<HTMLInputElement>("file").files?.[0];
    if (!file) {
      banner("choose a CSV file first");
      return;
    }
    const axes = el<HTMLInputElement>("axes").value
      .split(",")
      .map((s) => s.trim())
      .filter(Boolean);
    const attrs = el<HTMLInputElement>("attrs").value
      .split(",")
      .map((s) => s.trim())
      .filter(Boolean);
    try {
      const info = await api.createSession({
        csv_text: await file.text(),
        axes,
        id_column: el<HTMLInputElement>("id-col").value.trim(),
        attribute_columns: attrs,
      });
      state.sessionId = info.session_id;
      state.attributes = info.attributes;
      const select = el<HTMLSelectElement>("color-attr");
      select.innerHTML = info.attributes
        .map((a) => `<option value="${a}">${a}</option>`)
        .join("");
      el<HTMLDivElement>("session-info").textContent =
        `${info.rows} rows (${info.dropped_rows} dropped)`;
      await rebuild();
    } catch (err) {
      banner(describeError(err));
    }
  });

  const slider = el<HTMLInputElement>("epsilon");
  const sliderLabel = el<HTMLSpanElement>("epsilon-value");
  slider.addEventListener("input", () => {
    state.epsilon = Number(slider.value);
    sliderLabel.textContent = slider.value;
    void rebuild();
  });

  el<HTMLButtonElement>("reseed").addEventListener("click", () => {
    state.layoutSeed += 1;
    void rebuild();
  });

  el<HTMLButtonElement>("color-by").addEventListener("click", () => {
    void recolor({
      kind: "attribute",
      attribute: el<HTMLSelectElement>("color-attr").value,
      aggregator: el<HTMLSelectElement>("color-agg").value,
    });
  });

  el<HTMLButtonElement>("color-region").addEventListener("click", () => {
    void recolor({
      kind: "region",
      attribute: el<HTMLSelectElement>("color-attr").value,
      value: el<HTMLInputElement>("region-value").value,
    });
  });

  el<HTMLButtonElement>("color-distance").addEventListener("click", () => {
    const targets = [...state.groupA];
    if (!targets.length) {
      banner("select balls into group A first");
      return;
    }
    void recolor({ kind: "distance-to-balls", targets });
  });

  el<HTMLButtonElement>("compare").addEventListener("click", async () => {
    if (!state.sessionId) return;
    if (!state.groupA.size || !state.groupB.size) {
      banner("select balls into both groups first");
      return;
    }
    try {
      const report = await api.compare(
        state.sessionId,
        state.epsilon,
        state.seed,
        [...state.groupA],
        [...state.groupB],
      );
      el<HTMLDivElement>("comparison").innerHTML = comparisonTableHtml(report);
    } catch (err) {
      banner(describeError(err));
    }
  });

  el<HTMLButtonElement>("export").addEventListener("click", () => {
    try {
      const text = exportGraphText(state);
      const blob = new Blob([text], { type: "application/json" });
      const link = document.createElement("a");
      link.href = URL.createObjectURL(blob);
      link.download = "graph.json";
      link.click();
      URL.revokeObjectURL(link.href);
    } catch (err) {
      banner(describeError(err));
    }
  });
}

wire();
renderGraph();
