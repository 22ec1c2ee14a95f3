import { describe, expect, it } from "vitest";

import { buildCohortCsv } from "../src/csv.js";
import { SCHOOL_CLASS_EXAMPLE } from "../src/fixtures.js";
import { initialState, loadRows, toggleExcluded } from "../src/state.js";

describe("buildCohortCsv", () => {
  it("emits the service's column layout", () => {
    const state = loadRows(initialState(), SCHOOL_CLASS_EXAMPLE.slice(0, 4));
    const lines = buildCohortCsv(state.rows).trimEnd().split("\n");
    expect(lines[0]).toBe("case_id,last_contact,test_date,test_result");
    expect(lines[1]).toBe("1,2020-08-10,,");
    expect(lines[4]).toBe("4,2020-08-10,2020-08-18,negative");
  });

  it("omits manually excluded rows", () => {
    let state = loadRows(initialState(), SCHOOL_CLASS_EXAMPLE.slice(0, 3));
    state = toggleExcluded(state, state.rows[1]!.rowId);
    const lines = buildCohortCsv(state.rows).trimEnd().split("\n");
    expect(lines).toHaveLength(3);
    expect(lines.some((l) => l.startsWith("2,"))).toBe(false);
  });

  it("quotes case ids containing commas or quotes", () => {
    const state = loadRows(initialState(), [
      { caseId: 'Doe, Jane "JD"', lastContact: "2020-08-10", testDate: "", result: "" },
    ]);
    const line = buildCohortCsv(state.rows).trimEnd().split("\n")[1];
    expect(line).toBe('"Doe, Jane ""JD""",2020-08-10,,');
  });
});
