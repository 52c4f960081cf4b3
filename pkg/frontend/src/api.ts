/**
 * Typed client for the gateway JSON API.
 *
 * Mutations carry the session's optimistic version token; the server
 * answers 409 when the token is stale or when an answer batch contradicts
 * the recorded judgments. Only idempotent GETs are retried on network
 * failure; a failed POST is surfaced immediately because replaying it
 * could apply a batch twice.
 */

import type {
  AnswerItem,
  AnswersReport,
  CandidateResponse,
  DistributionDoc,
  ErrorBody,
  FrontierReport,
  QuestionsResponse,
  SessionView,
  VariableSpecDoc,
} from './types.js';

export class GatewayError extends Error {
  readonly status: number;
  readonly body: ErrorBody;

  constructor(status: number, body: ErrorBody) {
    super(body.message || `gateway error ${status}`);
    this.name = 'GatewayError';
    this.status = status;
    this.body = body;
  }

  get isConflict(): boolean {
    return this.status === 409 && this.body.code === 'judgment-conflict';
  }

  get isStaleVersion(): boolean {
    return this.status === 409 && this.body.code === 'stale-version';
  }
}

export type FetchLike = (
  input: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; ok: boolean; text(): Promise<string> }>;

export interface ClientOptions {
  fetchImpl?: FetchLike;
  getRetries?: number;
  retryDelayMs?: number;
}

const sleep = (ms: number) => new Promise<void>((r) => setTimeout(r, ms));

export class GatewayClient {
  readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;
  private readonly getRetries: number;
  private readonly retryDelayMs: number;

  constructor(baseUrl: string, options: ClientOptions = {}) {
    this.baseUrl = baseUrl.replace(/\/+$/, '');
    this.fetchImpl =
      options.fetchImpl ?? (globalThis.fetch.bind(globalThis) as FetchLike);
    this.getRetries = options.getRetries ?? 2;
    this.retryDelayMs = options.retryDelayMs ?? 250;
  }

  private async get<T>(path: string): Promise<T> {
    let lastError: unknown;
    for (let attempt = 0; attempt <= this.getRetries; attempt += 1) {
      try {
        return await this.request<T>('GET', path);
      } catch (err) {
        if (err instanceof GatewayError) throw err; // a real answer, not an outage
        lastError = err;
        if (attempt < this.getRetries) await sleep(this.retryDelayMs);
      }
    }
    throw lastError;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>('POST', path, body);
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const parsed = text ? JSON.parse(text) : null;
    if (!response.ok) {
      const errBody: ErrorBody =
        parsed && typeof parsed === 'object' && 'code' in parsed
          ? (parsed as ErrorBody)
          : { code: 'http-error', message: text || `status ${response.status}` };
      throw new GatewayError(response.status, errBody);
    }
    return parsed as T;
  }

  health(): Promise<{ status: string }> {
    return this.get('/healthz');
  }

  createSession(
    variable: VariableSpecDoc,
    extra: { config?: Record<string, unknown>; proposal?: DistributionDoc } = {},
  ): Promise<SessionView> {
    return this.post('/sessions', { variable, ...extra });
  }

  getSession(id: string): Promise<SessionView> {
    return this.get(`/sessions/${encodeURIComponent(id)}`);
  }

  getQuestions(id: string, batch?: number): Promise<QuestionsResponse> {
    const suffix = batch === undefined ? '' : `?batch=${batch}`;
    return this.get(`/sessions/${encodeURIComponent(id)}/questions${suffix}`);
  }

  submitAnswers(id: string, version: number, answers: AnswerItem[]): Promise<AnswersReport> {
    return this.post(`/sessions/${encodeURIComponent(id)}/answers`, { version, answers });
  }

  proposeCandidate(
    id: string,
    version: number,
    distribution: DistributionDoc,
  ): Promise<CandidateResponse> {
    return this.post(`/sessions/${encodeURIComponent(id)}/candidates`, {
      version,
      distribution,
    });
  }

  getFrontier(id: string): Promise<FrontierReport> {
    return this.get(`/sessions/${encodeURIComponent(id)}/frontier`);
  }
}
