// Typed client for the decision service. postPosterior keeps the raw
// response text alongside the parsed document: headline numbers are
// displayed verbatim from the body (string-equal to what the service
// serialized), never re-rendered through JavaScript floats.

import type {
  ApiErrorBody,
  CurveDoc,
  MinTestsResponse,
  PosteriorResponse,
  ScenarioDoc,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiRequestError extends Error {
  constructor(
    readonly status: number,
    readonly body: ApiErrorBody,
  ) {
    super(`${body.code}: ${body.message}`);
  }
}

export interface PosteriorRequestBody {
  scenario_id?: string;
  prior_targets?: { p_any_transmission: number; mean_given_transmission: number };
  group_size?: number;
  schedule?: Array<{ day: number; count: number }>;
  cohort_csv?: string;
  event_date?: string;
  threshold?: number;
  curve_id?: string;
  allow_fit_failure?: boolean;
}

export interface RawResult<T> {
  raw: string;
  parsed: T;
}

/**
 * Pull the literal token serialized for a top-level key out of the raw
 * body, e.g. extractLiteral('{"p0":0.979221648315,...}', "p0") ->
 * "0.979221648315". Used so displayed figures are string-identical to
 * the service's 12-significant-digit serialization.
 */
export function extractLiteral(raw: string, key: string): string {
  const marker = `"${key}":`;
  const start = raw.indexOf(marker);
  if (start < 0) throw new Error(`key ${key} not found in response body`);
  let i = start + marker.length;
  const match = raw.slice(i).match(/^(true|false|null|-?[0-9][0-9eE+.-]*|"(?:[^"\\]|\\.)*")/);
  if (!match) throw new Error(`no literal after key ${key}`);
  return match[0];
}

async function parseError(response: Response): Promise<ApiRequestError> {
  let body: ApiErrorBody;
  try {
    body = (await response.json()) as ApiErrorBody;
  } catch {
    body = { code: "http_error", message: `HTTP ${response.status}` };
  }
  return new ApiRequestError(response.status, body);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => globalThis.fetch(input, init),
  ) {}

  private async post(path: string, body: unknown): Promise<Response> {
    return this.fetchFn(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async postPosterior(body: PosteriorRequestBody): Promise<RawResult<PosteriorResponse>> {
    const response = await this.post("/v1/posterior", body);
    if (!response.ok) throw await parseError(response);
    const raw = await response.text();
    return { raw, parsed: JSON.parse(raw) as PosteriorResponse };
  }

  async minTests(body: {
    scenario_id?: string;
    prior_targets?: { p_any_transmission: number; mean_given_transmission: number };
    group_size: number;
    day: number;
    threshold?: number;
    curve_id?: string;
  }): Promise<MinTestsResponse> {
    const response = await this.post("/v1/what-if/min-tests", body);
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as MinTestsResponse;
  }

  async scenarios(): Promise<ScenarioDoc[]> {
    const response = await this.fetchFn(`${this.baseUrl}/v1/scenarios`);
    if (!response.ok) throw await parseError(response);
    const doc = (await response.json()) as { scenarios: ScenarioDoc[] };
    return doc.scenarios;
  }

  async curve(curveId: string): Promise<CurveDoc> {
    const response = await this.fetchFn(`${this.baseUrl}/v1/curves/${curveId}`);
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as CurveDoc;
  }
}
