import type {
  CreateSessionReply,
  FinishReply,
  QueryReply,
  QueryType,
  SessionLog,
  UiConfig,
} from './types.js';

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

/** What the controller needs from the service; ServiceClient is the real one. */
export interface SessionApi {
  createSession(
    userId: string,
    topicId: string,
    systemId: string,
  ): Promise<CreateSessionReply>;
  query(
    sessionId: string,
    queryText: string,
    queryType: QueryType,
  ): Promise<QueryReply>;
  rate(
    sessionId: string,
    target: 'initial' | 'response',
    score: number,
    responseIndex?: number,
  ): Promise<void>;
  finish(
    sessionId: string,
    r3: number | null,
    r4a: number | null,
    r4b: number | null,
  ): Promise<FinishReply>;
  log(sessionId: string): Promise<SessionLog>;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceClient implements SessionApi {
  constructor(
    private readonly base: string = '',
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async call<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchFn(`${this.base}${path}`, init);
    if (!res.ok) {
      let detail = `HTTP ${res.status}`;
      try {
        const body = await res.json();
        if (typeof body?.detail === 'string') detail = body.detail;
        else if (body?.detail !== undefined) detail = JSON.stringify(body.detail);
      } catch {
        // non-JSON error body; keep the bare status
      }
      throw new ApiError(res.status, detail);
    }
    return (await res.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.call<T>(path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
  }

  health(): Promise<{ status: string }> {
    return this.call('/health');
  }

  uiConfig(): Promise<UiConfig> {
    return this.call('/config');
  }

  async topics(): Promise<string[]> {
    const reply = await this.call<{ topics: string[] }>('/topics');
    return reply.topics;
  }

  createSession(
    userId: string,
    topicId: string,
    systemId: string,
  ): Promise<CreateSessionReply> {
    return this.post('/sessions', {
      user_id: userId,
      topic_id: topicId,
      system_id: systemId,
    });
  }

  query(
    sessionId: string,
    queryText: string,
    queryType: QueryType,
  ): Promise<QueryReply> {
    return this.post(`/sessions/${sessionId}/query`, {
      query_text: queryText,
      query_type: queryType,
    });
  }

  async rate(
    sessionId: string,
    target: 'initial' | 'response',
    score: number,
    responseIndex?: number,
  ): Promise<void> {
    await this.post(`/sessions/${sessionId}/rating`, {
      target,
      score,
      response_index: responseIndex ?? null,
    });
  }

  finish(
    sessionId: string,
    r3: number | null,
    r4a: number | null,
    r4b: number | null,
  ): Promise<FinishReply> {
    return this.post(`/sessions/${sessionId}/finish`, { r3, r4a, r4b });
  }

  log(sessionId: string): Promise<SessionLog> {
    return this.call(`/sessions/${sessionId}/log`);
  }
}
