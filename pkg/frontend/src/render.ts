// Pure string builders: state in, markup out.  Keeping these free of DOM
// access makes re-rendering idempotent and lets tests assert on the exact
// markup without a browser.

import { ABSENT_COLOR, rampColor } from "./ramp.js";
import { ExplorerState } from "./state.js";
import { ColoringResponse, ComparisonReport, GraphDoc } from "./types.js";

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/**
 * Comparison table markup.  Every cell is the API value rendered verbatim
 * via String(); no arithmetic happens on the client.
 */
export function comparisonTableHtml(report: ComparisonReport): string {
  const head =
    "<tr><th>axis</th><th>mean A</th><th>mean B</th><th>diff</th>" +
    "<th>std diff</th></tr>";
  const rows = report.rows
    .map(
      (row) =>
        `<tr><td>${escapeHtml(row.axis)}</td><td>${String(row.mean_a)}</td>` +
        `<td>${String(row.mean_b)}</td><td>${String(row.diff)}</td>` +
        `<td>${String(row.std_diff)}</td></tr>`,
    )
    .join("");
  const sizes =
    `<tr class="sizes"><td>rows</td><td>${String(report.size_a)}</td>` +
    `<td>${String(report.size_b)}</td><td></td><td></td></tr>`;
  return `<table class="comparison">${head}${rows}${sizes}</table>`;
}

export function legendHtml(coloring: ColoringResponse | null): string {
  if (!coloring || coloring.scale_min === null || coloring.scale_max === null) {
    return '<div class="legend empty">no coloring</div>';
  }
  return (
    `<div class="legend"><span class="low">${String(coloring.scale_min)}</span>` +
    '<span class="bar"></span>' +
    `<span class="high">${String(coloring.scale_max)}</span>` +
    `<span class="label">${escapeHtml(coloring.label)}</span></div>`
  );
}

function ballColor(
  ballId: number,
  coloring: ColoringResponse | null,
): string {
  if (!coloring) return ABSENT_COLOR;
  const value = coloring.values[String(ballId)];
  if (value === undefined || coloring.scale_min === null || coloring.scale_max === null) {
    return ABSENT_COLOR;
  }
  return rampColor(value, coloring.scale_min, coloring.scale_max);
}

export interface ViewBox {
  width: number;
  height: number;
  margin: number;
}

const DEFAULT_VIEW: ViewBox = { width: 720, height: 540, margin: 40 };

/**
 * Graph SVG: node area tracks member count, selection groups get distinct
 * outlines, colors come from the shared ramp.
 */
export function graphSvg(
  doc: GraphDoc,
  positions: Record<string, [number, number]>,
  coloring: ColoringResponse | null,
  groupA: Set<number>,
  groupB: Set<number>,
  view: ViewBox = DEFAULT_VIEW,
): string {
  const xs = doc.balls.map((b) => positions[String(b.id)]?.[0] ?? 0);
  const ys = doc.balls.map((b) => positions[String(b.id)]?.[1] ?? 0);
  const minX = Math.min(...xs);
  const minY = Math.min(...ys);
  const span = Math.max(
    Math.max(...xs) - minX,
    Math.max(...ys) - minY,
    1e-9,
  );
  const scale = Math.min(view.width, view.height) - 2 * view.margin;

  const place = (id: number): [number, number] => {
    const [x, y] = positions[String(id)] ?? [0, 0];
    return [
      view.margin + ((x - minX) / span) * scale,
      view.margin + ((y - minY) / span) * scale,
    ];
  };

  const maxSize = Math.max(...doc.balls.map((b) => b.size));
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${view.width}" ` +
      `height="${view.height}" viewBox="0 0 ${view.width} ${view.height}">`,
  ];
  for (const [a, b] of doc.edges) {
    const [xa, ya] = place(a);
    const [xb, yb] = place(b);
    parts.push(
      `<line x1="${xa.toFixed(2)}" y1="${ya.toFixed(2)}" ` +
        `x2="${xb.toFixed(2)}" y2="${yb.toFixed(2)}" class="edge"/>`,
    );
  }
  for (const ball of doc.balls) {
    const [x, y] = place(ball.id);
    const r = 5 + 16 * Math.sqrt(ball.size / maxSize);
    const selection = groupA.has(ball.id)
      ? " selected-a"
      : groupB.has(ball.id)
        ? " selected-b"
        : "";
    parts.push(
      `<circle data-ball="${ball.id}" cx="${x.toFixed(2)}" cy="${y.toFixed(2)}" ` +
        `r="${r.toFixed(2)}" fill="${ballColor(ball.id, coloring)}" ` +
        `class="ball${selection}"/>`,
    );
    parts.push(
      `<text x="${x.toFixed(2)}" y="${y.toFixed(2)}" dy="3" ` +
        `class="ball-label">${ball.id}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

export function statusLine(state: ExplorerState): string {
  if (!state.graph) return "no graph yet";
  return (
    `epsilon ${String(state.graph.epsilon)}, seed ${String(state.graph.seed)}: ` +
    `${state.graph.balls.length} balls, ${state.graph.edges.length} edges`
  );
}
