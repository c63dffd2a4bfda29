// Small client-side force nudge used only to keep dragging interactions
// smooth between server layouts.  Exports never use these positions; the
// canonical layout always comes from the API.

import { GraphDoc } from "./types.js";

export type Positions = Record<string, [number, number]>;

export function forceStep(
  doc: GraphDoc,
  positions: Positions,
  strength = 0.02,
  restLength = 1.0,
): Positions {
  const next: Positions = {};
  for (const ball of doc.balls) {
    const p = positions[String(ball.id)] ?? [0, 0];
    next[String(ball.id)] = [p[0], p[1]];
  }
  for (const [a, b] of doc.edges) {
    const pa = next[String(a)];
    const pb = next[String(b)];
    if (!pa || !pb) continue;
    const dx = pb[0] - pa[0];
    const dy = pb[1] - pa[1];
    const dist = Math.max(Math.hypot(dx, dy), 1e-9);
    const pull = strength * (dist - restLength);
    const ux = dx / dist;
    const uy = dy / dist;
    pa[0] += pull * ux;
    pa[1] += pull * uy;
    pb[0] -= pull * ux;
    pb[1] -= pull * uy;
  }
  return next;
}
