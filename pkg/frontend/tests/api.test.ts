import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

function fakeFetch(handler: (url: string, init?: RequestInit) => { status: number; body: unknown }) {
  const calls: Array<{ url: string; init?: RequestInit }> = [];
  const impl = async (url: string, init?: RequestInit): Promise<Response> => {
    calls.push({ url, init });
    const { status, body } = handler(url, init);
    return {
      ok: status >= 200 && status < 300,
      status,
      json: async () => body,
    } as Response;
  };
  return { impl, calls };
}

describe("api client", () => {
  it("posts msg text on session create", async () => {
    const { impl, calls } = fakeFetch(() => ({
      status: 201,
      body: { session_id: "abc", n_vertices: 4, n_edges: 4 },
    }));
    const api = new ApiClient("http://h:1", impl);
    const created = await api.createSession("v 0 0 0\n");
    expect(created.session_id).toBe("abc");
    expect(calls[0].url).toBe("http://h:1/sessions");
    expect(calls[0].init?.method).toBe("POST");
    expect(JSON.parse(calls[0].init?.body as string)).toEqual({ msg_text: "v 0 0 0\n" });
  });

  it("hits the documented endpoints", async () => {
    const { impl, calls } = fakeFetch(() => ({ status: 200, body: {} }));
    const api = new ApiClient("http://h:1/", impl);
    await api.getGraph("id1");
    await api.getReport("id1");
    await api.getFlexModes("id1");
    await api.step("id1", 0, 0.01);
    await api.steer("id1", 0, 53, 2.0);
    await api.reset("id1");
    expect(calls.map((c) => c.url)).toEqual([
      "http://h:1/sessions/id1/graph",
      "http://h:1/sessions/id1/report",
      "http://h:1/sessions/id1/flexmodes",
      "http://h:1/sessions/id1/step",
      "http://h:1/sessions/id1/steer",
      "http://h:1/sessions/id1/reset",
    ]);
    expect(JSON.parse(calls[3].init?.body as string)).toEqual({ mode_index: 0, h: 0.01 });
    expect(JSON.parse(calls[4].init?.body as string)).toEqual({ a: 0, b: 53, target: 2.0 });
  });

  it("surfaces server errors verbatim", async () => {
    const { impl } = fakeFetch(() => ({
      status: 400,
      body: { error: "msg_text (string) is required" },
    }));
    const api = new ApiClient("http://h:1", impl);
    await expect(api.createSession("")).rejects.toThrowError(
      new ApiError(400, "msg_text (string) is required"),
    );
  });

  it("reports busy sessions", async () => {
    const { impl } = fakeFetch(() => ({
      status: 409,
      body: { error: "session busy: one step at a time" },
    }));
    const api = new ApiClient("http://h:1", impl);
    try {
      await api.step("id1", 0, 0.01);
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).status).toBe(409);
    }
  });
});
