// API payload shapes, mirroring docs/openapi.json on the service side.
// The UI never recomputes any of these numbers; it displays what the
// service sent (for headline figures, verbatim from the raw body text).

export interface ScheduleGroup {
  day: number;
  count: number;
}

export type DecisionAction =
  | "release_quarantine"
  | "continue_quarantine"
  | "hold_positive_case";

export interface Decision {
  action: DecisionAction;
  threshold: number;
  rationale: string;
}

export interface PriorInfo {
  group_size: number;
  alpha: number;
  beta: number;
  fit_residual: number;
  fit_status: "ok" | "fit_failed";
  p_no_transmission: number;
}

export interface ScheduleInfo {
  group_size: number;
  tested: number;
  untested: number;
  groups: ScheduleGroup[];
}

export interface Exclusion {
  case_id: string;
  reason: string;
}

export interface Diagnostics {
  log_evidence: number;
  prior_p0: number;
  any_positive: boolean;
  event_date: string | null;
  exclusions: Exclusion[];
}

export interface PosteriorResponse {
  p0: number;
  decision: Decision;
  posterior: number[];
  prior: PriorInfo;
  schedule: ScheduleInfo;
  diagnostics: Diagnostics;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  field_path?: string;
}

export interface ScenarioDoc {
  id: string;
  name: string;
  p_any_transmission: number;
  mean_given_transmission: number;
  curve_id: string;
  threshold: number;
  version: number;
}

export interface CurvePoint {
  day: number;
  sensitivity: number;
}

export interface CurveDoc {
  id: string;
  name: string;
  specificity: number;
  points: CurvePoint[];
}

export interface MinTestsResponse {
  min_tests: number | null;
  fraction_of_group: number | null;
  reason?: "not_achievable";
}

// ---- editable form state ----------------------------------------------------

export type TestResult = "" | "negative" | "positive";

export interface CohortRow {
  /** stable client-side row identity, survives edits and reordering */
  rowId: string;
  caseId: string;
  lastContact: string; // ISO date or empty
  testDate: string; // ISO date or empty
  result: TestResult;
  /** manually excluded by the officer; not submitted */
  excluded: boolean;
}

export interface CohortFormState {
  rows: CohortRow[];
  scenarioId: string;
  thresholdOverride: number | null;
  curveId: string | null;
}

export type RowField = "caseId" | "lastContact" | "testDate" | "result";

export interface RowFlag {
  rowId: string;
  field: RowField | null;
  /** identical machine codes to the service's error bodies */
  code: "cohort_invalid" | "schema_violation";
  message: string;
  /** true when the flag predicts server-side exclusion rather than rejection */
  exclusion: boolean;
}
