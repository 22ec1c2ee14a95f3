// Client-side mirror of the service's cohort validation: same rules,
// same machine codes, so a row the server would reject is flagged
// before any request leaves the browser. The server stays the
// authority; nothing here feeds the displayed numbers.

import type { CohortRow, RowFlag } from "./types.js";

const ISO_DATE = /^\d{4}-\d{2}-\d{2}$/;

export function isIsoDate(value: string): boolean {
  if (!ISO_DATE.test(value)) return false;
  const parsed = new Date(`${value}T00:00:00Z`);
  return !Number.isNaN(parsed.getTime()) && parsed.toISOString().slice(0, 10) === value;
}

function activeRows(rows: CohortRow[]): CohortRow[] {
  return rows.filter((r) => !r.excluded);
}

/** Modal last-contact date of the active rows; ties break to the earliest. */
export function modalLastContact(rows: CohortRow[]): string | null {
  const counts = new Map<string, number>();
  for (const row of activeRows(rows)) {
    if (isIsoDate(row.lastContact)) {
      counts.set(row.lastContact, (counts.get(row.lastContact) ?? 0) + 1);
    }
  }
  let best: string | null = null;
  let bestCount = 0;
  for (const [date, count] of [...counts.entries()].sort()) {
    if (count > bestCount) {
      best = date;
      bestCount = count;
    }
  }
  return best;
}

export function validateRows(rows: CohortRow[]): RowFlag[] {
  const flags: RowFlag[] = [];
  const seenIds = new Map<string, string>(); // caseId -> first rowId
  const eventDate = modalLastContact(rows);

  for (const row of activeRows(rows)) {
    const flag = (field: RowFlag["field"], message: string, exclusion = false) =>
      flags.push({ rowId: row.rowId, field, code: "cohort_invalid", message, exclusion });

    if (!row.caseId.trim()) {
      flag("caseId", "record is missing a case id");
    } else if (seenIds.has(row.caseId.trim())) {
      flag("caseId", "duplicate record (the model allows one test per person)");
    } else {
      seenIds.set(row.caseId.trim(), row.rowId);
    }

    if (!row.lastContact) {
      flag("lastContact", "missing last_contact date");
    } else if (!isIsoDate(row.lastContact)) {
      flag("lastContact", `cannot parse date ${row.lastContact}`);
    }

    const hasDate = row.testDate !== "";
    const hasResult = row.result !== "";
    if (hasDate !== hasResult) {
      flag(hasDate ? "result" : "testDate", "test date and result must be given together");
      continue;
    }
    if (hasDate && !isIsoDate(row.testDate)) {
      flag("testDate", `cannot parse date ${row.testDate}`);
      continue;
    }
    if (hasDate && isIsoDate(row.lastContact)) {
      if (row.testDate < row.lastContact) {
        flag("testDate", `test date ${row.testDate} precedes last contact ${row.lastContact}`);
      } else if (eventDate !== null && row.lastContact === eventDate && row.testDate <= eventDate) {
        flag("testDate", "test date is not at least one day after the event date");
      }
    }

    if (
      eventDate !== null &&
      isIsoDate(row.lastContact) &&
      row.lastContact !== eventDate
    ) {
      flag(
        "lastContact",
        "heterogeneous last contact - assess individually",
        true,
      );
    }
  }
  return flags;
}

/** Threshold override check, mirroring the service's schema_violation. */
export function validateThreshold(value: number | null): RowFlag | null {
  if (value === null) return null;
  if (Number.isFinite(value) && value > 0 && value < 1) return null;
  return {
    rowId: "",
    field: null,
    code: "schema_violation",
    message: `threshold must lie strictly between 0 and 1, got ${value}`,
    exclusion: false,
  };
}

/** Rows the server would reject outright (not merely exclude). */
export function blockingFlags(flags: RowFlag[]): RowFlag[] {
  return flags.filter((f) => !f.exclusion);
}
