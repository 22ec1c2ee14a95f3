// DOM rendering. Headline figures (p0, threshold) are inserted as raw
// literals extracted from the response body; everything else that is
// numeric-but-graphical (bar widths) may use the parsed floats.

import { extractLiteral } from "./api.js";
import type { CohortFormState, CohortRow, PosteriorResponse, RowFlag } from "./types.js";
import type { WhatIfTable } from "./whatif.js";

export interface RowHandlers {
  onField(rowId: string, field: "caseId" | "lastContact" | "testDate" | "result", value: string): void;
  onDuplicate(rowId: string): void;
  onToggleExcluded(rowId: string): void;
  onRemove(rowId: string): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

const BANNER_TEXT: Record<PosteriorResponse["decision"]["action"], string> = {
  release_quarantine: "Release",
  continue_quarantine: "Continue",
  hold_positive_case: "Hold",
};

export function renderCohortTable(
  container: HTMLElement,
  state: CohortFormState,
  flags: RowFlag[],
  handlers: RowHandlers,
): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  const table = el(doc, "table", "cohort-table");
  const head = el(doc, "tr");
  for (const title of ["case id", "last contact", "test date", "result", "", ""]) {
    head.append(el(doc, "th", undefined, title));
  }
  table.append(head);

  const flagsByRow = new Map<string, RowFlag[]>();
  for (const flag of flags) {
    const list = flagsByRow.get(flag.rowId) ?? [];
    list.push(flag);
    flagsByRow.set(flag.rowId, list);
  }

  for (const row of state.rows) {
    table.append(renderRow(doc, row, flagsByRow.get(row.rowId) ?? [], handlers));
  }
  container.append(table);
}

function renderRow(doc: Document, row: CohortRow, flags: RowFlag[], handlers: RowHandlers) {
  const tr = el(doc, "tr", row.excluded ? "row excluded" : "row");
  tr.dataset.rowId = row.rowId;

  const cell = (
    field: "caseId" | "lastContact" | "testDate" | "result",
    input: HTMLInputElement | HTMLSelectElement,
  ) => {
    const td = el(doc, "td");
    const flag = flags.find((f) => f.field === field);
    if (flag) {
      td.className = flag.exclusion ? "flag-exclusion" : "flag-invalid";
      td.title = `${flag.code}: ${flag.message}`;
      const note = el(doc, "span", "flag-note", flag.exclusion ? "excluded" : "invalid");
      note.dataset.code = flag.code;
      td.append(input, note);
    } else {
      td.append(input);
    }
    return td;
  };

  const caseInput = el(doc, "input") as HTMLInputElement;
  caseInput.value = row.caseId;
  caseInput.name = "caseId";
  caseInput.addEventListener("change", () => handlers.onField(row.rowId, "caseId", caseInput.value));

  const contactInput = el(doc, "input") as HTMLInputElement;
  contactInput.type = "date";
  contactInput.value = row.lastContact;
  contactInput.name = "lastContact";
  contactInput.addEventListener("change", () =>
    handlers.onField(row.rowId, "lastContact", contactInput.value),
  );

  const testInput = el(doc, "input") as HTMLInputElement;
  testInput.type = "date";
  testInput.value = row.testDate;
  testInput.name = "testDate";
  testInput.addEventListener("change", () => handlers.onField(row.rowId, "testDate", testInput.value));

  const resultSelect = el(doc, "select") as HTMLSelectElement;
  resultSelect.name = "result";
  for (const value of ["", "negative", "positive"]) {
    const option = el(doc, "option", undefined, value || "(untested)") as HTMLOptionElement;
    option.value = value;
    resultSelect.append(option);
  }
  resultSelect.value = row.result;
  resultSelect.addEventListener("change", () =>
    handlers.onField(row.rowId, "result", resultSelect.value),
  );

  tr.append(
    cell("caseId", caseInput),
    cell("lastContact", contactInput),
    cell("testDate", testInput),
    cell("result", resultSelect),
  );

  const duplicate = el(doc, "button", "dup", "duplicate");
  duplicate.addEventListener("click", () => handlers.onDuplicate(row.rowId));
  const exclude = el(doc, "button", "exclude", row.excluded ? "include" : "exclude");
  exclude.addEventListener("click", () => handlers.onToggleExcluded(row.rowId));
  const remove = el(doc, "button", "remove", "remove");
  remove.addEventListener("click", () => handlers.onRemove(row.rowId));
  const actions = el(doc, "td", "actions");
  actions.append(duplicate, exclude, remove);
  tr.append(actions, el(doc, "td"));
  return tr;
}

/** Decision panel: banner, p0 verbatim, gauge, prior diagnostics, posterior bars. */
export function renderDecisionPanel(
  container: HTMLElement,
  raw: string,
  parsed: PosteriorResponse,
): void {
  const doc = container.ownerDocument;
  container.replaceChildren();

  const action = parsed.decision.action;
  const banner = el(doc, "div", `banner banner-${action}`, BANNER_TEXT[action]);
  banner.dataset.action = action;
  container.append(banner);

  const p0Literal = extractLiteral(raw, "p0");
  const thresholdLiteral = extractLiteral(raw, "threshold");
  const headline = el(doc, "div", "headline");
  const p0Value = el(doc, "span", "p0-value", p0Literal);
  p0Value.id = "p0-value";
  headline.append(
    el(doc, "span", "label", "p0 = "),
    p0Value,
    el(doc, "span", "label", ` (threshold ${thresholdLiteral})`),
  );
  container.append(headline);

  const gauge = el(doc, "div", "gauge");
  const fill = el(doc, "div", "gauge-fill");
  fill.style.width = `${(parsed.p0 * 100).toFixed(2)}%`;
  const mark = el(doc, "div", "gauge-threshold");
  mark.style.left = `${(parsed.decision.threshold * 100).toFixed(2)}%`;
  gauge.append(fill, mark);
  container.append(gauge);

  const prior = parsed.prior;
  const diag = el(
    doc,
    "div",
    "prior-diagnostics",
    `prior: alpha ${prior.alpha.toPrecision(6)}, beta ${prior.beta.toPrecision(6)}, ` +
      `fit ${prior.fit_status}, P(K=0) ${prior.p_no_transmission.toPrecision(6)}; ` +
      `${parsed.schedule.tested} of ${parsed.schedule.group_size} tested, ` +
      `${parsed.schedule.untested} untested`,
  );
  container.append(diag);

  if (parsed.diagnostics.exclusions.length) {
    const list = el(doc, "ul", "exclusions");
    for (const exclusion of parsed.diagnostics.exclusions) {
      list.append(el(doc, "li", undefined, `case ${exclusion.case_id}: ${exclusion.reason}`));
    }
    container.append(list);
  }

  const chart = el(doc, "div", "posterior-chart");
  parsed.posterior.forEach((mass, k) => {
    const bar = el(doc, "div", "bar");
    bar.style.height = `${Math.max(1, Math.round(mass * 120))}px`;
    bar.title = `K=${k}: ${mass.toPrecision(4)}`;
    bar.dataset.k = String(k);
    chart.append(bar);
  });
  container.append(chart);
}

/** Fit-failure and other API errors get an explanatory banner, no decision. */
export function renderErrorPanel(container: HTMLElement, code: string, message: string): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  const banner = el(doc, "div", "banner banner-error", `No decision: ${code}`);
  banner.dataset.action = "error";
  container.append(banner, el(doc, "div", "error-detail", message));
}

export function renderWhatIfPanel(
  container: HTMLElement,
  table: WhatIfTable,
  currentTests: number,
  pastCurveEnd: boolean,
): void {
  const doc = container.ownerDocument;
  container.replaceChildren();

  const callout =
    table.minTests === null
      ? "threshold not achievable on this day, even testing everyone"
      : `minimum tests to release: ${table.minTests} of ${table.groupSize}`;
  const calloutNode = el(doc, "div", "min-tests-callout", callout);
  calloutNode.dataset.minTests = table.minTests === null ? "null" : String(table.minTests);
  container.append(calloutNode);

  if (pastCurveEnd) {
    container.append(
      el(doc, "div", "notice", "day is past the tabulated curve; using its last value"),
    );
  }

  const chart = el(doc, "div", "whatif-chart");
  table.p0ByTests.forEach((p0, n) => {
    const bar = el(doc, "div", n === currentTests ? "bar current" : "bar");
    bar.style.height = `${Math.round(p0 * 120)}px`;
    bar.title = `N=${n}: p0=${p0.toPrecision(4)}`;
    chart.append(bar);
  });
  container.append(chart);
}
