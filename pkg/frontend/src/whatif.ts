// What-if planning data: whole p0-vs-N tables per (scenario, group
// size, day, threshold), fetched once and cached for the session.
// Slider movement only ever reads the cache; it never issues requests.

import type { ApiClient } from "./api.js";

export interface WhatIfTable {
  scenarioId: string;
  groupSize: number;
  day: number;
  threshold: number | null;
  /** p0 for N = 0..groupSize same-day negative tests */
  p0ByTests: number[];
  minTests: number | null;
}

export class WhatIfCache {
  private readonly tables = new Map<string, Promise<WhatIfTable>>();
  requestCount = 0;

  constructor(private readonly api: ApiClient) {}

  private key(scenarioId: string, groupSize: number, day: number, threshold: number | null): string {
    return `${scenarioId}|${groupSize}|${day}|${threshold ?? "default"}`;
  }

  table(
    scenarioId: string,
    groupSize: number,
    day: number,
    threshold: number | null = null,
  ): Promise<WhatIfTable> {
    const key = this.key(scenarioId, groupSize, day, threshold);
    let cached = this.tables.get(key);
    if (!cached) {
      cached = this.fetchTable(scenarioId, groupSize, day, threshold);
      this.tables.set(key, cached);
      cached.catch(() => this.tables.delete(key)); // do not cache failures
    }
    return cached;
  }

  private async fetchTable(
    scenarioId: string,
    groupSize: number,
    day: number,
    threshold: number | null,
  ): Promise<WhatIfTable> {
    this.requestCount += 1;
    const thresholdField = threshold === null ? {} : { threshold };
    const posteriors = await Promise.all(
      Array.from({ length: groupSize + 1 }, (_, n) =>
        this.api.postPosterior({
          scenario_id: scenarioId,
          group_size: groupSize,
          schedule: n === 0 ? [] : [{ day, count: n }],
          ...thresholdField,
        }),
      ),
    );
    const minTests = await this.api.minTests({
      scenario_id: scenarioId,
      group_size: groupSize,
      day,
      ...thresholdField,
    });
    return {
      scenarioId,
      groupSize,
      day,
      threshold,
      p0ByTests: posteriors.map((r) => r.parsed.p0),
      minTests: minTests.min_tests,
    };
  }
}
