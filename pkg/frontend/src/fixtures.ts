// The example school-class line list: 17 contacts of one confirmed
// case, event on 2020-08-10. Two people met the case again later and
// get auto-flagged for exclusion; twelve of the remaining fifteen
// tested negative on days 8-10. Matches the cohort fixture shipped
// with the decision service.

import type { TestResult } from "./types.js";

export interface FixtureEntry {
  caseId: string;
  lastContact: string;
  testDate: string;
  result: TestResult;
}

export const SCHOOL_CLASS_EXAMPLE: FixtureEntry[] = [
  { caseId: "1", lastContact: "2020-08-10", testDate: "", result: "" },
  { caseId: "2", lastContact: "2020-08-10", testDate: "", result: "" },
  { caseId: "3", lastContact: "2020-08-10", testDate: "", result: "" },
  { caseId: "4", lastContact: "2020-08-10", testDate: "2020-08-18", result: "negative" },
  { caseId: "5", lastContact: "2020-08-10", testDate: "2020-08-19", result: "negative" },
  { caseId: "6", lastContact: "2020-08-10", testDate: "2020-08-19", result: "negative" },
  { caseId: "7", lastContact: "2020-08-10", testDate: "2020-08-19", result: "negative" },
  { caseId: "8", lastContact: "2020-08-10", testDate: "2020-08-20", result: "negative" },
  { caseId: "9", lastContact: "2020-08-10", testDate: "2020-08-19", result: "negative" },
  { caseId: "10", lastContact: "2020-08-10", testDate: "2020-08-19", result: "negative" },
  { caseId: "11", lastContact: "2020-08-10", testDate: "2020-08-19", result: "negative" },
  { caseId: "12", lastContact: "2020-08-10", testDate: "2020-08-19", result: "negative" },
  { caseId: "13", lastContact: "2020-08-10", testDate: "2020-08-19", result: "negative" },
  { caseId: "14", lastContact: "2020-08-10", testDate: "2020-08-19", result: "negative" },
  { caseId: "15", lastContact: "2020-08-10", testDate: "2020-08-19", result: "negative" },
  { caseId: "16", lastContact: "2020-08-16", testDate: "2020-08-19", result: "negative" },
  { caseId: "17", lastContact: "2020-08-18", testDate: "2020-08-24", result: "negative" },
];
