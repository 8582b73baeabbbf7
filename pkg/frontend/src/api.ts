/** Typed client for the yupana session service (versioned under /v1). */

export interface SessionMode {
  name: string;
  operation: string | null;
  operands: { value: number; sign: number }[];
  target: number | null;
}

export interface SessionStatus {
  id: string;
  rows: number;
  mode: SessionMode;
  snapshot: string;
  value: number;
  is_simple: boolean;
  completed: boolean;
  revision: number;
  move_count: number;
  elapsed_seconds: number;
  created_at: number;
  updated_at: number;
}

export interface SquareRef {
  row: number;
  weight: number;
}

export interface TokenChange extends SquareRef {
  sign: number;
  count: number;
}

export interface MatchInfo {
  match_id: string;
  rule_id: string;
  sign: number;
  anchor_row: number;
  weight: number | null;
  k: number;
  n: number;
  squares: SquareRef[];
  removals: TokenChange[];
  deposits: TokenChange[];
  description: string;
}

export interface MatchListing {
  revision: number;
  matches: MatchInfo[];
}

export interface TraceStep {
  index: number;
  kind: string;
  rule_id: string;
  sign: number;
  anchor_row: number;
  k: number;
  n: number;
  value_before: number;
  value_after: number;
}

export interface RuleDoc {
  id: string;
  name: string;
  kind: string;
  pattern: string;
  movement: string;
}

export interface AutoOutcome {
  applied: number;
  finished: boolean;
  session: SessionStatus;
}

export interface CreateSessionOptions {
  rows?: number;
  mode?: string;
  operation?: string;
  operands?: { value: number; sign?: number }[];
}

/** Error carrying the service's error type so callers can react to staleness. */
export class ServiceError extends Error {
  readonly status: number;
  readonly errorType: string;

  constructor(status: number, errorType: string, detail: string) {
    super(detail);
    this.status = status;
    this.errorType = errorType;
  }

  get isStale(): boolean {
    return this.errorType === "StaleMatchError";
  }
}

export class ServiceClient {
  constructor(private readonly baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let errorType = "HttpError";
      let detail = `${response.status} on ${path}`;
      try {
        const payload = (await response.json()) as { error?: string; detail?: string };
        errorType = payload.error ?? errorType;
        detail = payload.detail ?? detail;
      } catch {
        // non-JSON error body; keep defaults
      }
      throw new ServiceError(response.status, errorType, detail);
    }
    return (await response.json()) as T;
  }

  rules(): Promise<RuleDoc[]> {
    return this.request("GET", "/v1/rules");
  }

  createSession(options: CreateSessionOptions = {}): Promise<SessionStatus> {
    return this.request("POST", "/v1/sessions", options);
  }

  getSession(id: string): Promise<SessionStatus> {
    return this.request("GET", `/v1/sessions/${id}`);
  }

  loadOperand(id: string, value: number, sign: number): Promise<SessionStatus> {
    return this.request("POST", `/v1/sessions/${id}/load`, { value, sign });
  }

  listMatches(id: string): Promise<MatchListing> {
    return this.request("GET", `/v1/sessions/${id}/matches`);
  }

  applyMove(id: string, matchId: string): Promise<SessionStatus> {
    return this.request("POST", `/v1/sessions/${id}/moves`, { match_id: matchId });
  }

  autoRun(id: string, stepBudget?: number): Promise<AutoOutcome> {
    return this.request("POST", `/v1/sessions/${id}/auto`, {
      step_budget: stepBudget ?? null,
    });
  }

  hint(id: string): Promise<MatchInfo> {
    return this.request("GET", `/v1/sessions/${id}/hint`);
  }

  trace(id: string): Promise<{ steps: TraceStep[] }> {
    return this.request("GET", `/v1/sessions/${id}/trace`);
  }
}
