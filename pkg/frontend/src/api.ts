import {
  ApiRequestError,
  ColoringResponse,
  ComparisonReport,
  GraphResult,
  LayoutResponse,
  SessionInfo,
  SessionRequest,
  SweepRow,
} from "./types.js";

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function expectOk(res: Response): Promise<Response> {
  if (res.ok) return res;
  let code = "http_error";
  let message = `HTTP ${res.status}`;
  try {
    const body = await res.json();
    if (body && typeof body.code === "string") {
      code = body.code;
      message = body.message ?? message;
    }
  } catch {
    // non-JSON error body: keep the generic message
  }
  throw new ApiRequestError(res.status, code, message);
}

/**
 * Thin typed client over the workbench HTTP API.
 *
 * Graph builds follow a latest-wins policy: a new build aborts any build
 * still in flight, and a response that arrives after being superseded is
 * dropped (resolves to null).  Every number the UI shows comes back from
 * these calls; nothing is recomputed client-side.
 */
export class ApiClient {
  private buildToken = 0;
  private buildController: AbortController | null = null;

  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async postJson(path: string, body: unknown): Promise<Response> {
    const res = await this.fetchFn(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    return expectOk(res);
  }

  async createSession(request: SessionRequest): Promise<SessionInfo> {
    const res = await this.postJson("/sessions", request);
    return (await res.json()) as SessionInfo;
  }

  /** Returns null when this request was superseded by a newer build. */
  async buildGraph(
    sessionId: string,
    epsilon: number,
    seed: number,
  ): Promise<GraphResult | null> {
    this.buildController?.abort();
    const controller = new AbortController();
    this.buildController = controller;
    const token = ++this.buildToken;
    let res: Response;
    try {
      res = await this.fetchFn(`${this.baseUrl}/sessions/${sessionId}/graphs`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ epsilon, seed }),
        signal: controller.signal,
      });
    } catch (err) {
      if (controller.signal.aborted) return null;
      throw err;
    }
    if (token !== this.buildToken) return null;
    await expectOk(res);
    const raw = await res.text();
    if (token !== this.buildToken) return null;
    return { raw, doc: JSON.parse(raw) };
  }

  async coloring(
    sessionId: string,
    body: Record<string, unknown>,
  ): Promise<ColoringResponse> {
    const res = await this.postJson(`/sessions/${sessionId}/colorings`, body);
    return (await res.json()) as ColoringResponse;
  }

  async compare(
    sessionId: string,
    epsilon: number,
    seed: number,
    groupA: number[],
    groupB: number[],
  ): Promise<ComparisonReport> {
    const res = await this.postJson(`/sessions/${sessionId}/comparisons`, {
      graph: { epsilon, seed },
      group_a: groupA,
      group_b: groupB,
    });
    return (await res.json()) as ComparisonReport;
  }

  async sweep(
    sessionId: string,
    epsilons: number[],
    seed: number,
  ): Promise<SweepRow[]> {
    const params = new URLSearchParams({
      epsilons: epsilons.join(","),
      seed: String(seed),
    });
    const res = await this.fetchFn(
      `${this.baseUrl}/sessions/${sessionId}/sweep?${params}`,
    );
    const body = (await (await expectOk(res)).json()) as { rows: SweepRow[] };
    return body.rows;
  }

  async layout(
    sessionId: string,
    epsilon: number,
    seed: number,
    layoutSeed: number,
  ): Promise<LayoutResponse> {
    const params = new URLSearchParams({
      graph: `${epsilon},${seed}`,
      layout_seed: String(layoutSeed),
    });
    const res = await this.fetchFn(
      `${this.baseUrl}/sessions/${sessionId}/layout?${params}`,
    );
    return (await (await expectOk(res)).json()) as LayoutResponse;
  }
}
