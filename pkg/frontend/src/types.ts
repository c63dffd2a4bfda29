// Wire types mirroring the HTTP API payloads.

export interface SessionRequest {
  csv_text: string;
  axes: string[];
  id_column: string;
  attribute_columns: string[];
}

export interface SessionInfo {
  session_id: string;
  rows: number;
  dropped_rows: number;
  axes: string[];
  attributes: string[];
}

export interface GraphBall {
  id: number;
  landmark: string;
  members: string[];
  size: number;
}

export interface GraphDoc {
  epsilon: number;
  seed: number;
  axes: string[];
  balls: GraphBall[];
  edges: [number, number][];
  colorings?: Record<string, Record<string, number>>;
}

export interface GraphResult {
  /** Raw response body, kept verbatim so exports match the server bytes. */
  raw: string;
  doc: GraphDoc;
}

export interface ColoringResponse {
  label: string;
  scale_min: number | null;
  scale_max: number | null;
  values: Record<string, number>;
}

export interface ComparisonRow {
  axis: string;
  mean_a: number;
  mean_b: number;
  diff: number;
  std_diff: number;
}

export interface ComparisonReport {
  group_a: number[];
  group_b: number[];
  size_a: number;
  size_b: number;
  rows: ComparisonRow[];
}

export interface SweepRow {
  epsilon: number;
  balls: number;
  size_mean: number;
  size_sd: number;
  edges_per_ball: number;
}

export interface LayoutResponse {
  positions: Record<string, [number, number]>;
}

export interface ApiError {
  code: string;
  message: string;
}

export class ApiRequestError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}
