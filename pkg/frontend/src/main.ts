// Application bootstrap: wires the cohort form, decision panel and
// what-if planner together. All numbers displayed anywhere come from
// service responses; this file only moves state and DOM around.

import { ApiClient, ApiRequestError } from "./api.js";
import { buildCohortCsv } from "./csv.js";
import { SCHOOL_CLASS_EXAMPLE } from "./fixtures.js";
import {
  renderCohortTable,
  renderDecisionPanel,
  renderErrorPanel,
  renderWhatIfPanel,
} from "./render.js";
import * as state from "./state.js";
import type { CohortFormState, ScenarioDoc } from "./types.js";
import { blockingFlags, validateRows, validateThreshold } from "./validation.js";
import { WhatIfCache } from "./whatif.js";

const DEFAULT_BASE = `${location.protocol}//${location.hostname}:8000`;

function must<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

let form: CohortFormState = state.initialState();
let scenarios: ScenarioDoc[] = [];
let api = new ApiClient(DEFAULT_BASE);
let whatIf = new WhatIfCache(api);

const cohortContainer = must<HTMLDivElement>("cohort");
const decisionContainer = must<HTMLDivElement>("decision");
const whatIfContainer = must<HTMLDivElement>("whatif");
const scenarioSelect = must<HTMLSelectElement>("scenario");
const thresholdInput = must<HTMLInputElement>("threshold");
const baseInput = must<HTMLInputElement>("api-base");
const statusLine = must<HTMLDivElement>("status");
const daySlider = must<HTMLInputElement>("whatif-day");
const sizeInput = must<HTMLInputElement>("whatif-size");
const testsSlider = must<HTMLInputElement>("whatif-tests");

function setStatus(text: string): void {
  statusLine.textContent = text;
}

function redrawCohort(): void {
  const flags = validateRows(form.rows);
  renderCohortTable(cohortContainer, form, flags, {
    onField(rowId, field, value) {
      form = state.updateField(form, rowId, field, value);
      redrawCohort();
    },
    onDuplicate(rowId) {
      form = state.duplicateRow(form, rowId);
      redrawCohort();
    },
    onToggleExcluded(rowId) {
      form = state.toggleExcluded(form, rowId);
      redrawCohort();
    },
    onRemove(rowId) {
      form = state.removeRow(form, rowId);
      redrawCohort();
    },
  });
}

async function submitCohort(): Promise<void> {
  const flags = validateRows(form.rows);
  const blocking = blockingFlags(flags);
  if (blocking.length) {
    const first = blocking[0]!;
    renderErrorPanel(decisionContainer, first.code, first.message);
    return;
  }
  const thresholdFlag = validateThreshold(form.thresholdOverride);
  if (thresholdFlag) {
    renderErrorPanel(decisionContainer, thresholdFlag.code, thresholdFlag.message);
    return;
  }
  setStatus("evaluating…");
  try {
    const { raw, parsed } = await api.postPosterior({
      scenario_id: form.scenarioId,
      cohort_csv: buildCohortCsv(form.rows),
      ...(form.thresholdOverride === null ? {} : { threshold: form.thresholdOverride }),
      ...(form.curveId === null ? {} : { curve_id: form.curveId }),
    });
    renderDecisionPanel(decisionContainer, raw, parsed);
    setStatus("");
  } catch (error) {
    if (error instanceof ApiRequestError) {
      renderErrorPanel(decisionContainer, error.body.code, error.body.message);
      setStatus("");
    } else {
      setStatus(`service unreachable: ${String(error)}`);
    }
  }
}

async function refreshWhatIf(): Promise<void> {
  const groupSize = Number(sizeInput.value);
  const day = Number(daySlider.value);
  const tests = Math.min(Number(testsSlider.value), groupSize);
  testsSlider.max = String(groupSize);
  if (!Number.isInteger(groupSize) || groupSize < 1) return;
  setStatus("fetching what-if table…");
  try {
    const table = await whatIf.table(form.scenarioId, groupSize, day, form.thresholdOverride);
    // the packaged curve tabulates 21 days; later days clamp to its last value
    renderWhatIfPanel(whatIfContainer, table, tests, day > 21);
    setStatus("");
  } catch (error) {
    if (error instanceof ApiRequestError) {
      renderErrorPanel(whatIfContainer, error.body.code, error.body.message);
      setStatus("");
    } else {
      setStatus(`service unreachable: ${String(error)}`);
    }
  }
}

async function loadScenarios(): Promise<void> {
  scenarios = await api.scenarios();
  scenarioSelect.replaceChildren();
  for (const doc of scenarios) {
    const option = document.createElement("option");
    option.value = doc.id;
    option.textContent = `${doc.name} (P>0: ${doc.p_any_transmission.toPrecision(3)}, mean ${doc.mean_given_transmission})`;
    scenarioSelect.append(option);
  }
  scenarioSelect.value = form.scenarioId;
}

function rebindApi(): void {
  api = new ApiClient(baseInput.value.replace(/\/$/, ""));
  whatIf = new WhatIfCache(api);
  loadScenarios().catch((error) => setStatus(`service unreachable: ${String(error)}`));
}

export function bootstrap(): void {
  baseInput.value = DEFAULT_BASE;
  baseInput.addEventListener("change", rebindApi);
  scenarioSelect.addEventListener("change", () => {
    form = state.setScenario(form, scenarioSelect.value);
  });
  thresholdInput.addEventListener("change", () => {
    const value = thresholdInput.value.trim();
    form = state.setThresholdOverride(form, value === "" ? null : Number(value));
  });
  must<HTMLButtonElement>("add-row").addEventListener("click", () => {
    form = state.addRow(form);
    redrawCohort();
  });
  must<HTMLButtonElement>("load-example").addEventListener("click", () => {
    form = state.loadRows(form, SCHOOL_CLASS_EXAMPLE);
    redrawCohort();
  });
  must<HTMLButtonElement>("submit").addEventListener("click", () => void submitCohort());
  for (const control of [daySlider, sizeInput, testsSlider]) {
    control.addEventListener("change", () => void refreshWhatIf());
  }
  redrawCohort();
  rebindApi();
}

bootstrap();
