import { describe, expect, it } from "vitest";

import { ApiClient, ApiRequestError, extractLiteral } from "../src/api.js";

function stubFetch(status: number, body: string) {
  const calls: Array<{ url: string; init?: RequestInit }> = [];
  const fetchFn = async (url: string, init?: RequestInit) => {
    calls.push({ url, init });
    return new Response(body, {
      status,
      headers: { "content-type": "application/json" },
    });
  };
  return { fetchFn, calls };
}

describe("extractLiteral", () => {
  const raw = '{"p0":0.979221648315,"decision":{"action":"release_quarantine","threshold":0.9}}';

  it("pulls the serialized number verbatim", () => {
    expect(extractLiteral(raw, "p0")).toBe("0.979221648315");
    expect(extractLiteral(raw, "threshold")).toBe("0.9");
  });

  it("takes the first occurrence (top-level field order is fixed)", () => {
    const nested = '{"p0":0.5,"echo":{"p0":0.25}}';
    expect(extractLiteral(nested, "p0")).toBe("0.5");
  });

  it("handles strings, booleans and null", () => {
    const doc = '{"action":"hold_positive_case","flag":true,"note":null}';
    expect(extractLiteral(doc, "action")).toBe('"hold_positive_case"');
    expect(extractLiteral(doc, "flag")).toBe("true");
    expect(extractLiteral(doc, "note")).toBe("null");
  });

  it("throws on a missing key", () => {
    expect(() => extractLiteral(raw, "nope")).toThrow(/not found/);
  });
});

describe("ApiClient", () => {
  it("posts the body and keeps the raw text", async () => {
    const raw = '{"p0":0.98,"decision":{"action":"release_quarantine","threshold":0.9},"posterior":[0.98,0.02]}';
    const { fetchFn, calls } = stubFetch(200, raw);
    const api = new ApiClient("http://svc", fetchFn);
    const result = await api.postPosterior({ scenario_id: "school_class", group_size: 2, schedule: [] });
    expect(calls[0]!.url).toBe("http://svc/v1/posterior");
    expect(JSON.parse(calls[0]!.init!.body as string)).toMatchObject({ scenario_id: "school_class" });
    expect(result.raw).toBe(raw);
    expect(result.parsed.p0).toBe(0.98);
  });

  it("surfaces service error bodies with their machine code", async () => {
    const { fetchFn } = stubFetch(422, '{"code":"fit_failed","message":"no prior reproduces targets"}');
    const api = new ApiClient("http://svc", fetchFn);
    await expect(
      api.postPosterior({ scenario_id: "s", group_size: 2, schedule: [] }),
    ).rejects.toMatchObject({ status: 422, body: { code: "fit_failed" } });
  });

  it("wraps unparseable error bodies", async () => {
    const { fetchFn } = stubFetch(500, "boom");
    const api = new ApiClient("http://svc", fetchFn);
    const error = await api.scenarios().catch((e: unknown) => e);
    expect(error).toBeInstanceOf(ApiRequestError);
    expect((error as ApiRequestError).body.code).toBe("http_error");
  });
});
