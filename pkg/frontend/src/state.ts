// Pure state transitions for the cohort entry form. Reducer-style
// functions return fresh state so the render layer can diff cheaply
// and tests need no DOM.

import type { CohortFormState, CohortRow, RowField, TestResult } from "./types.js";

let rowCounter = 0;

export function freshRowId(): string {
  rowCounter += 1;
  return `row-${rowCounter}`;
}

export function emptyRow(): CohortRow {
  return { rowId: freshRowId(), caseId: "", lastContact: "", testDate: "", result: "", excluded: false };
}

export function initialState(): CohortFormState {
  return { rows: [emptyRow()], scenarioId: "school_class", thresholdOverride: null, curveId: null };
}

export function addRow(state: CohortFormState): CohortFormState {
  return { ...state, rows: [...state.rows, emptyRow()] };
}

export function duplicateRow(state: CohortFormState, rowId: string): CohortFormState {
  const rows: CohortRow[] = [];
  for (const row of state.rows) {
    rows.push(row);
    if (row.rowId === rowId) {
      rows.push({ ...row, rowId: freshRowId(), caseId: "" });
    }
  }
  return { ...state, rows };
}

export function toggleExcluded(state: CohortFormState, rowId: string): CohortFormState {
  return {
    ...state,
    rows: state.rows.map((r) => (r.rowId === rowId ? { ...r, excluded: !r.excluded } : r)),
  };
}

export function removeRow(state: CohortFormState, rowId: string): CohortFormState {
  const rows = state.rows.filter((r) => r.rowId !== rowId);
  return { ...state, rows: rows.length ? rows : [emptyRow()] };
}

/** Field update; clearing the test date also clears the result (they travel together). */
export function updateField(
  state: CohortFormState,
  rowId: string,
  field: RowField,
  value: string,
): CohortFormState {
  return {
    ...state,
    rows: state.rows.map((row) => {
      if (row.rowId !== rowId) return row;
      const next = { ...row };
      switch (field) {
        case "caseId":
          next.caseId = value;
          break;
        case "lastContact":
          next.lastContact = value;
          break;
        case "testDate":
          next.testDate = value;
          if (value === "") next.result = "";
          break;
        case "result":
          next.result = value as TestResult;
          break;
      }
      return next;
    }),
  };
}

export function setScenario(state: CohortFormState, scenarioId: string): CohortFormState {
  return { ...state, scenarioId };
}

export function setThresholdOverride(state: CohortFormState, value: number | null): CohortFormState {
  return { ...state, thresholdOverride: value };
}

/** Replace all rows from parsed line-list tuples (fixture loading). */
export function loadRows(
  state: CohortFormState,
  entries: Array<{ caseId: string; lastContact: string; testDate: string; result: TestResult }>,
): CohortFormState {
  return {
    ...state,
    rows: entries.map((e) => ({ ...e, rowId: freshRowId(), excluded: false })),
  };
}
