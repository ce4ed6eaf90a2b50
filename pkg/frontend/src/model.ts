import type {
  CreateSessionReply,
  QueryReply,
  QueryType,
  SessionLog,
} from './types.js';

export type Phase = 'exploring' | 'questionnaire' | 'done';

export interface Entry {
  queryText: string;
  queryType: QueryType;
  responseText: string;
  responseWordCount: number;
  rating: number | null;
  exhausted: boolean;
}

export const RATING_MIN = 1;
export const RATING_MAX = 5;

/**
 * Client-side mirror of one session. Everything here was acknowledged by the
 * server; optimistic state never lands in the model. The server enforces the
 * minimum-exploration gate; the local clock only drives the countdown shown
 * on the finish button, and a rejected finish resyncs it.
 */
export class UiSessionModel {
  phase: Phase = 'exploring';
  initialRating: number | null = null;
  entries: Entry[] = [];
  private gateUntilMs: number | null = null;

  constructor(
    readonly sessionId: string,
    readonly topicId: string,
    readonly systemId: string,
    readonly initialText: string,
    readonly initialWordCount: number,
    readonly suggestions: string[],
    readonly minExploreSeconds: number,
    private readonly startedAtMs: number,
  ) {}

  static fromCreate(reply: CreateSessionReply, nowMs: number): UiSessionModel {
    return new UiSessionModel(
      reply.session_id,
      reply.topic_id,
      reply.system_id,
      reply.initial_text,
      reply.initial_word_count,
      reply.suggestions,
      reply.min_explore_seconds,
      nowMs,
    );
  }

  /**
   * Rebuild a model from the server transcript (page reload mid-session).
   * The log does not carry suggestions, so callers pass any cached copy.
   */
  static fromLog(
    sessionId: string,
    log: SessionLog,
    minExploreSeconds: number,
    nowMs: number,
    suggestions: string[] = [],
  ): UiSessionModel {
    const model = new UiSessionModel(
      sessionId,
      log.topic_id,
      log.system_id,
      log.initial_text,
      log.initial_text.split(/\s+/).filter(Boolean).length,
      suggestions,
      minExploreSeconds,
      nowMs,
    );
    model.initialRating = log.ratings.r1;
    model.entries = log.interactions.map((i) => ({
      queryText: i.query_text,
      queryType: i.query_type,
      responseText: i.response_text,
      responseWordCount: i.response_word_count,
      rating: i.rating,
      // an exhausted response is exactly an empty one
      exhausted: i.response_text === '',
    }));
    const r = log.ratings;
    if (r.r3 !== null || r.r4a !== null || r.r4b !== null) {
      model.phase = 'done';
    }
    return model;
  }

  appendEntry(queryType: QueryType, reply: QueryReply): Entry {
    const entry: Entry = {
      queryText: reply.query_text,
      queryType,
      responseText: reply.response_text,
      responseWordCount: reply.response_word_count,
      rating: null,
      exhausted: reply.exhausted,
    };
    this.entries.push(entry);
    return entry;
  }

  get canRepeat(): boolean {
    return this.entries.length > 0;
  }

  get lastQueryText(): string | null {
    const last = this.entries[this.entries.length - 1];
    return last ? last.queryText : null;
  }

  /** Words shown so far: initial summary plus every response. */
  get totalWords(): number {
    return this.entries.reduce(
      (sum, e) => sum + e.responseWordCount,
      this.initialWordCount,
    );
  }

  setInitialRating(score: number): void {
    this.initialRating = checkScore(score);
  }

  setEntryRating(index: number, score: number): void {
    const entry = this.entries[index];
    if (!entry) {
      throw new RangeError(`no response at index ${index}`);
    }
    entry.rating = checkScore(score);
  }

  elapsedSeconds(nowMs: number): number {
    return Math.max(0, (nowMs - this.startedAtMs) / 1000);
  }

  /** Whole seconds left on the exploration gate; 0 once finishing is allowed. */
  remainingSeconds(nowMs: number): number {
    const local = this.minExploreSeconds - this.elapsedSeconds(nowMs);
    const server =
      this.gateUntilMs === null ? 0 : (this.gateUntilMs - nowMs) / 1000;
    return Math.max(0, Math.ceil(Math.max(local, server)));
  }

  finishAllowed(nowMs: number): boolean {
    return this.remainingSeconds(nowMs) === 0;
  }

  /** The server rejected a finish; trust its countdown over the local clock. */
  noteGateRejection(remainingSeconds: number, nowMs: number): void {
    this.gateUntilMs = nowMs + remainingSeconds * 1000;
  }
}

function checkScore(score: number): number {
  if (!Number.isInteger(score) || score < RATING_MIN || score > RATING_MAX) {
    throw new RangeError(`score must be an integer in [${RATING_MIN}, ${RATING_MAX}]`);
  }
  return score;
}
