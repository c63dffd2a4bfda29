// Color ramp identical to the CLI's documented stops:
// red (minimum) -> orange -> yellow -> green -> blue (maximum).

export const RAMP_STOPS = [
  "#FF0000",
  "#FFA500",
  "#FFFF00",
  "#00FF00",
  "#0000FF",
] as const;

export const ABSENT_COLOR = "#C0C0C0";

function hexToRgb(color: string): [number, number, number] {
  return [
    parseInt(color.slice(1, 3), 16),
    parseInt(color.slice(3, 5), 16),
    parseInt(color.slice(5, 7), 16),
  ];
}

function toHex(value: number): string {
  return Math.round(value).toString(16).padStart(2, "0").toUpperCase();
}

export function rampColor(value: number, low: number, high: number): string {
  const t = high <= low ? 0.5 : Math.min(Math.max((value - low) / (high - low), 0), 1);
  const scaled = t * (RAMP_STOPS.length - 1);
  const i = Math.min(Math.floor(scaled), RAMP_STOPS.length - 2);
  const frac = scaled - i;
  const [r0, g0, b0] = hexToRgb(RAMP_STOPS[i]);
  const [r1, g1, b1] = hexToRgb(RAMP_STOPS[i + 1]);
  return `#${toHex(r0 + (r1 - r0) * frac)}${toHex(g0 + (g1 - g0) * frac)}${toHex(
    b0 + (b1 - b0) * frac,
  )}`;
}
