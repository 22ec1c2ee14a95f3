import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { WhatIfCache } from "../src/whatif.js";

function countingApi() {
  let posteriorCalls = 0;
  let minTestsCalls = 0;
  let failNext = false;
  const fetchFn = async (url: string, init?: RequestInit) => {
    if (failNext) {
      failNext = false;
      return new Response('{"code":"scenario_not_found","message":"nope"}', { status: 404 });
    }
    if (url.endsWith("/v1/posterior")) {
      posteriorCalls += 1;
      const body = JSON.parse(init!.body as string) as { schedule: unknown[] };
      const n = body.schedule.length ? (body.schedule[0] as { count: number }).count : 0;
      return new Response(
        JSON.stringify({ p0: 0.8 + n / 100, decision: { action: "continue_quarantine", threshold: 0.9 } }),
        { status: 200 },
      );
    }
    minTestsCalls += 1;
    return new Response('{"min_tests":7,"fraction_of_group":0.28}', { status: 200 });
  };
  return {
    api: new ApiClient("http://svc", fetchFn),
    stats: () => ({ posteriorCalls, minTestsCalls }),
    failOnce: () => {
      failNext = true;
    },
  };
}

describe("WhatIfCache", () => {
  it("fetches a whole table once and serves sliders from cache", async () => {
    const { api, stats } = countingApi();
    const cache = new WhatIfCache(api);
    const table = await cache.table("school_class", 25, 4);
    expect(table.p0ByTests).toHaveLength(26);
    expect(table.p0ByTests[0]).toBeCloseTo(0.8);
    expect(table.minTests).toBe(7);
    expect(stats()).toEqual({ posteriorCalls: 26, minTestsCalls: 1 });

    // simulated slider movement: any number of reads, zero new requests
    for (let i = 0; i < 50; i++) {
      await cache.table("school_class", 25, 4);
    }
    expect(stats()).toEqual({ posteriorCalls: 26, minTestsCalls: 1 });
    expect(cache.requestCount).toBe(1);
  });

  it("keys the cache by scenario, size, day and threshold", async () => {
    const { api, stats } = countingApi();
    const cache = new WhatIfCache(api);
    await cache.table("school_class", 10, 4);
    await cache.table("school_class", 10, 5);
    await cache.table("school_class", 10, 4, 0.95);
    expect(cache.requestCount).toBe(3);
    expect(stats().minTestsCalls).toBe(3);
  });

  it("does not cache failures", async () => {
    const { api, failOnce } = countingApi();
    const cache = new WhatIfCache(api);
    failOnce();
    await expect(cache.table("school_class", 5, 4)).rejects.toMatchObject({
      body: { code: "scenario_not_found" },
    });
    const table = await cache.table("school_class", 5, 4);
    expect(table.p0ByTests).toHaveLength(6);
  });
});
