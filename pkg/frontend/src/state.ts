import { ColoringResponse, GraphDoc } from "./types.js";

export type SelectionGroup = "A" | "B";

/** Single source of truth for what the explorer is showing. */
export interface ExplorerState {
  sessionId: string | null;
  attributes: string[];
  epsilon: number;
  seed: number;
  layoutSeed: number;
  graph: GraphDoc | null;
  /** Raw canonical graph JSON from the server, used verbatim for export. */
  rawGraph: string | null;
  positions: Record<string, [number, number]> | null;
  coloring: ColoringResponse | null;
  groupA: Set<number>;
  groupB: Set<number>;
}

export function initialState(): ExplorerState {
  return {
    sessionId: null,
    attributes: [],
    epsilon: 10,
    seed: 0,
    layoutSeed: 0,
    graph: null,
    rawGraph: null,
    positions: null,
    coloring: null,
    groupA: new Set(),
    groupB: new Set(),
  };
}

/** Toggle a ball in one selection group; a ball never sits in both. */
export function toggleSelection(
  state: ExplorerState,
  ballId: number,
  group: SelectionGroup,
): void {
  if (!state.graph || !state.graph.balls.some((b) => b.id === ballId)) {
    return;
  }
  const target = group === "A" ? state.groupA : state.groupB;
  const other = group === "A" ? state.groupB : state.groupA;
  if (target.has(ballId)) {
    target.delete(ballId);
  } else {
    target.add(ballId);
    other.delete(ballId);
  }
}

/** Drop selected ids that no longer exist after a rebuild. */
export function pruneSelections(state: ExplorerState): void {
  const known = new Set((state.graph?.balls ?? []).map((b) => b.id));
  for (const group of [state.groupA, state.groupB]) {
    for (const id of [...group]) {
      if (!known.has(id)) group.delete(id);
    }
  }
}

export function applyGraph(
  state: ExplorerState,
  raw: string,
  doc: GraphDoc,
): void {
  state.graph = doc;
  state.rawGraph = raw;
  state.coloring = null;
  state.positions = null;
  pruneSelections(state);
}

/** The exported artifact is exactly the server's canonical bytes. */
export function exportGraphText(state: ExplorerState): string {
  if (state.rawGraph === null) {
    throw new Error("no graph to export");
  }
  return state.rawGraph;
}
