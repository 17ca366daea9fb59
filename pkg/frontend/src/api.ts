/**
 * Typed client for the session service. Every fact the console displays
 * comes from one of these calls; the console itself never computes
 * entailments, verifications, or preferences.
 */

export type Verdict = "true" | "false" | "unknown";

export interface SessionView {
  id: string;
  phase: string;
  pendingQueries: string[];
  answered: number;
  goalMissing: string[];
  goalWrong: string[];
  repairs: string[];
  executedRepair: string | null;
  notes: string[];
}

export interface QueryItem {
  axiom: string;
  context: string;
}

export interface QueueResponse {
  phase: string;
  queries: QueryItem[];
}

export interface VerificationConditions {
  addedAxiomsTrue: boolean;
  deletedAxiomsFalse: boolean;
  resultConsistent: boolean;
  missingEntailed: boolean;
  wrongAvoided: boolean;
}

export interface VerificationReport {
  holds: boolean;
  conditions: VerificationConditions;
  untrueAdds: string[];
  undeletable: string[];
  protectedRemoved: string[];
  missingNotEntailed: string[];
  wrongEntailed: string[];
  unmatchedDeletes: string[];
}

export interface RepairView {
  id: string;
  origin: string;
  add: string[];
  delete: string[];
  verification: VerificationReport;
}

export type RelationWord = "first" | "second" | "equal" | "incomparable";

export interface ComparisonCell {
  completeness: RelationWord;
  correctness: RelationWord;
  subset: RelationWord;
}

export interface CertificateView {
  maximallyComplete: boolean;
  missingTrue: string[];
  minimallyIncorrect: boolean;
  falseEntailed: string[];
}

export interface AnalysisView {
  candidates: string[];
  matrix: Record<string, Record<string, ComparisonCell>>;
  certificates: Record<string, CertificateView>;
  skyline: string[];
  optimal: Record<string, string[]>;
}

export interface HistoryEvent {
  seq: number;
  type: string;
  axiom?: string;
  verdict?: string;
  [extra: string]: unknown;
}

export interface ExecuteResponse {
  executed: string;
  phase: string;
  result: string;
}

/** A non-2xx response; `detail` is the decoded error body when present. */
export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(`service responded ${status}`);
    this.name = "ServiceError";
  }
}

async function decode<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail: unknown = null;
    try {
      detail = (await response.json()).detail ?? null;
    } catch {
      detail = null;
    }
    throw new ServiceError(response.status, detail);
  }
  return (await response.json()) as T;
}

export function createApi(baseUrl: string, fetchFn: typeof fetch = fetch) {
  const request = (path: string, init?: RequestInit) =>
    fetchFn(`${baseUrl}${path}`, init);
  const post = (path: string, body: unknown) =>
    request(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });

  return {
    createSession: async (
      tbox: string,
      missing: string[],
      wrong: string[],
    ): Promise<SessionView> =>
      decode(await post("/sessions", { tbox, missing, wrong })),

    session: async (sid: string): Promise<SessionView> =>
      decode(await request(`/sessions/${sid}`)),

    queue: async (sid: string): Promise<QueueResponse> =>
      decode(await request(`/sessions/${sid}/queries`)),

    answer: async (
      sid: string,
      axiom: string,
      verdict: Verdict,
      revise = false,
    ): Promise<SessionView> =>
      decode(await post(`/sessions/${sid}/answers`, { axiom, verdict, revise })),

    repairs: async (sid: string): Promise<RepairView[]> =>
      (await decode<{ repairs: RepairView[] }>(
        await request(`/sessions/${sid}/repairs`),
      )).repairs,

    analysis: async (sid: string): Promise<AnalysisView> =>
      decode(await request(`/sessions/${sid}/analysis`)),

    history: async (sid: string): Promise<HistoryEvent[]> =>
      (await decode<{ events: HistoryEvent[] }>(
        await request(`/sessions/${sid}/history`),
      )).events,

    execute: async (sid: string, repairId: string): Promise<ExecuteResponse> =>
      decode(await post(`/sessions/${sid}/execute`, { repairId })),

    resultText: async (sid: string): Promise<string> => {
      const response = await request(`/sessions/${sid}/result`);
      if (!response.ok) {
        throw new ServiceError(response.status, null);
      }
      return response.text();
    },
  };
}

export type Api = ReturnType<typeof createApi>;
