// Cohort rows -> the service's line-list CSV. The browser only
// assembles text; all date arithmetic and grouping happens server-side
// so the UI and CLI can never disagree on day offsets.

import type { CohortRow } from "./types.js";

const HEADER = "case_id,last_contact,test_date,test_result";

function field(value: string): string {
  return /[",\n]/.test(value) ? `"${value.replaceAll('"', '""')}"` : value;
}

export function buildCohortCsv(rows: CohortRow[]): string {
  const lines = [HEADER];
  for (const row of rows) {
    if (row.excluded) continue;
    lines.push(
      [field(row.caseId.trim()), row.lastContact, row.testDate, row.result].join(","),
    );
  }
  return lines.join("\n") + "\n";
}
