/** Thin typed client for the assessment service. */

import type {
  AnswerSheet,
  CreateAssessmentResponse,
  ErrorBody,
  ModificationDraft,
  RankResponse,
  RubricsDoc,
  ScenarioRequest,
  ScenarioResultPayload,
} from "./types";

export class ApiError extends Error {
  readonly code: string;
  readonly field?: string;
  readonly status: number;

  constructor(status: number, body: ErrorBody) {
    super(body.message);
    this.name = "ApiError";
    this.status = status;
    this.code = body.code;
    this.field = body.field;
  }
}

async function request<T>(
  base: string,
  path: string,
  init?: RequestInit,
): Promise<T> {
  const response = await fetch(base + path, init);
  if (!response.ok) {
    let body: ErrorBody;
    try {
      body = (await response.json()) as ErrorBody;
    } catch {
      body = { code: "http_error", message: `HTTP ${response.status}` };
    }
    throw new ApiError(response.status, body);
  }
  return (await response.json()) as T;
}

function post(payload: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(payload),
  };
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  fetchRubrics(): Promise<RubricsDoc> {
    return request(this.base, "/rubrics");
  }

  createAssessment(sheet: AnswerSheet): Promise<CreateAssessmentResponse> {
    return request(this.base, "/assessments", post(sheet));
  }

  fetchAssessment(id: string): Promise<{ id: string; document: AnswerSheet }> {
    return request(this.base, `/assessments/${id}`);
  }

  rescore(id: string): Promise<CreateAssessmentResponse> {
    return request(this.base, `/assessments/${id}/score`, post({}));
  }

  evaluateScenario(
    scenario: ScenarioRequest,
  ): Promise<{ result: ScenarioResultPayload }> {
    return request(this.base, "/scenarios/evaluate", post(scenario));
  }

  rankInterventions(
    baseline: { id: string } | { sheet: AnswerSheet },
    candidates: ModificationDraft[],
  ): Promise<RankResponse> {
    return request(this.base, "/interventions/rank", post({ baseline, candidates }));
  }
}
