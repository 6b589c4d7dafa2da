import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, SessionView } from "../src/api.js";

type Call = { url: string; init?: RequestInit };

function stubFetch(responder: (call: Call) => { status: number; body: unknown }) {
  const calls: Call[] = [];
  const fetchFn = async (url: string, init?: RequestInit): Promise<Response> => {
    const call = { url, init };
    calls.push(call);
    const { status, body } = responder(call);
    return new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });
  };
  return { calls, fetchFn };
}

const VIEW: SessionView = {
  id: "abc",
  quiver: { n: 2, arrows: [[1, 2, 1]] },
  origin: { n: 2, arrows: [[1, 2, 1]] },
  greens: [2],
  reds: [1],
  c_matrix: [
    [-1, 0],
    [0, 1],
  ],
  history: [1],
  all_red: false,
};

describe("ApiClient", () => {
  it("posts mutations to the session endpoint", async () => {
    const { calls, fetchFn } = stubFetch(() => ({ status: 200, body: VIEW }));
    const api = new ApiClient("http://x", fetchFn);
    const view = await api.mutate("abc", 1);
    expect(calls[0].url).toBe("http://x/sessions/abc/mutations");
    expect(calls[0].init?.method).toBe("POST");
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({ vertex: 1 });
    expect(view).toEqual(VIEW);
  });

  it("undo uses DELETE on the last mutation", async () => {
    const { calls, fetchFn } = stubFetch(() => ({ status: 200, body: VIEW }));
    const api = new ApiClient("", fetchFn);
    await api.undo("abc");
    expect(calls[0].url).toBe("/sessions/abc/mutations/last");
    expect(calls[0].init?.method).toBe("DELETE");
  });

  it("requests the series with the degree parameter", async () => {
    const { calls, fetchFn } = stubFetch(() => ({
      status: 200,
      body: { degree: 6, history: [], factors: [], series: [] },
    }));
    const api = new ApiClient("", fetchFn);
    await api.dt("abc", 6);
    expect(calls[0].url).toBe("/sessions/abc/dt?degree=6");
  });

  it("wraps error responses with status and detail", async () => {
    const { fetchFn } = stubFetch(() => ({
      status: 422,
      body: { detail: "degree must be between 1 and 16" },
    }));
    const api = new ApiClient("", fetchFn);
    await expect(api.dt("abc", 99)).rejects.toMatchObject({
      status: 422,
      message: "degree must be between 1 and 16",
    });
    await expect(api.dt("abc", 99)).rejects.toBeInstanceOf(ApiError);
  });

  it("sends verify payloads in the wire format", async () => {
    const { calls, fetchFn } = stubFetch(() => ({ status: 200, body: { equal: true } }));
    const api = new ApiClient("", fetchFn);
    const result = await api.verify({ n: 2, arrows: [[1, 2, 1]] }, [1, 2], [2, 1, 2], 10);
    expect(result.equal).toBe(true);
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({
      quiver: { n: 2, arrows: [[1, 2, 1]] },
      seqA: [1, 2],
      seqB: [2, 1, 2],
      degree: 10,
    });
  });
});
