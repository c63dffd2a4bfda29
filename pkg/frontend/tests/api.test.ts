import { describe, expect, it } from "vitest";
import { ApiClient } from "../src/api.js";

interface Pending {
  url: string;
  body: unknown;
  aborted: () => boolean;
  resolve: (payload: string, status?: number) => void;
}

/** fetch stand-in whose responses resolve only when the test says so. */
function deferredFetch() {
  const pending: Pending[] = [];
  const fetchFn = (url: string, init?: RequestInit): Promise<Response> =>
    new Promise((resolve, reject) => {
      const signal = init?.signal ?? null;
      const entry: Pending = {
        url,
        body: init?.body ? JSON.parse(String(init.body)) : null,
        aborted: () => signal?.aborted ?? false,
        resolve: (payload, status = 200) =>
          resolve(new Response(payload, { status })),
      };
      signal?.addEventListener("abort", () =>
        reject(new DOMException("aborted", "AbortError")),
      );
      pending.push(entry);
    });
  return { pending, fetchFn };
}

const GRAPH_PAYLOAD = (seedMark: number) =>
  `{"axes":["x"],"balls":[{"id":1,"landmark":"a","members":["a"],"size":1}],` +
  `"edges":[],"epsilon":${seedMark},"seed":0}\n`;

describe("latest-wins graph builds", () => {
  it("rapid slider changes leave exactly one surviving request", async () => {
    const { pending, fetchFn } = deferredFetch();
    const api = new ApiClient("http://test", fetchFn);

    const first = api.buildGraph("s", 5, 0);
    const second = api.buildGraph("s", 10, 0);
    const third = api.buildGraph("s", 20, 0);

    expect(pending).toHaveLength(3);
    expect(pending[0].aborted()).toBe(true);
    expect(pending[1].aborted()).toBe(true);
    expect(pending[2].aborted()).toBe(false);

    pending[2].resolve(GRAPH_PAYLOAD(20));
    const results = await Promise.all([first, second, third]);
    expect(results[0]).toBeNull();
    expect(results[1]).toBeNull();
    expect(results[2]?.doc.epsilon).toBe(20);
    expect((pending[2].body as { epsilon: number }).epsilon).toBe(20);
  });

  it("a stale response that still arrives is dropped", async () => {
    // The slow first response resolves *after* a newer build started but
    // without an abort firing (e.g. proxy buffering); it must be discarded.
    const { pending, fetchFn } = deferredFetch();
    const api = new ApiClient("http://test", fetchFn);
    let slowResolve: ((r: Response) => void) | null = null;
    const slowFetch = (url: string, init?: RequestInit): Promise<Response> => {
      if (pending.length === 0) {
        pending.push({
          url,
          body: init?.body ? JSON.parse(String(init.body)) : null,
          aborted: () => false,
          resolve: () => undefined,
        });
        return new Promise((resolve) => {
          slowResolve = resolve;
        });
      }
      return fetchFn(url, init);
    };
    const apiSlow = new ApiClient("http://test", slowFetch);
    const first = apiSlow.buildGraph("s", 5, 0);
    const second = apiSlow.buildGraph("s", 10, 0);
    slowResolve!(new Response(GRAPH_PAYLOAD(5), { status: 200 }));
    pending[1].resolve(GRAPH_PAYLOAD(10));
    expect(await first).toBeNull();
    expect((await second)?.doc.epsilon).toBe(10);
    void api;
  });

  it("maps error bodies to typed errors", async () => {
    const { pending, fetchFn } = deferredFetch();
    const api = new ApiClient("http://test", fetchFn);
    const call = api.buildGraph("s", -1, 0);
    pending[0].resolve(
      JSON.stringify({ code: "bad_parameter", message: "epsilon must be positive" }),
      422,
    );
    await expect(call).rejects.toMatchObject({
      status: 422,
      code: "bad_parameter",
    });
  });
});
