import { ApiError } from './api.js';
import type { SessionApi } from './api.js';
import { UiSessionModel } from './model.js';
import type { Entry } from './model.js';
import type { FinishReply, QueryType } from './types.js';

/**
 * Drives one session against the service. All server traffic goes through
 * here so the view stays a plain renderer: `onChange` fires after every state
 * change, `onNotice` carries user-facing failures (422/410 and the like)
 * without touching session state.
 */
export class SessionController {
  model: UiSessionModel | null = null;
  busy = false;
  onChange: () => void = () => {};
  onNotice: (text: string) => void = () => {};

  constructor(
    private readonly client: SessionApi,
    private readonly now: () => number = Date.now,
  ) {}

  nowMs(): number {
    return this.now();
  }

  async start(
    userId: string,
    topicId: string,
    systemId: string,
  ): Promise<UiSessionModel> {
    const reply = await this.client.createSession(userId, topicId, systemId);
    this.model = UiSessionModel.fromCreate(reply, this.now());
    this.onChange();
    return this.model;
  }

  async restore(
    sessionId: string,
    minExploreSeconds: number,
    suggestions: string[] = [],
  ): Promise<UiSessionModel> {
    const log = await this.client.log(sessionId);
    this.model = UiSessionModel.fromLog(
      sessionId,
      log,
      minExploreSeconds,
      this.now(),
      suggestions,
    );
    this.onChange();
    return this.model;
  }

  /**
   * Send one query. Only one may be in flight; the view disables its controls
   * while `busy`, and a second concurrent call here is a programming error.
   * Repeats send empty text; the server reuses the last query.
   */
  async submitQuery(text: string, type: QueryType): Promise<Entry | null> {
    const model = this.requireModel();
    if (this.busy) {
      throw new Error('a query is already in flight');
    }
    if (type === 'repeat' && !model.canRepeat) {
      throw new Error('nothing to repeat yet');
    }
    this.busy = true;
    this.onChange();
    try {
      const reply = await this.client.query(
        model.sessionId,
        type === 'repeat' ? '' : text,
        type,
      );
      return model.appendEntry(type, reply);
    } catch (err) {
      this.surface(err);
      return null;
    } finally {
      this.busy = false;
      this.onChange();
    }
  }

  async rateInitial(score: number): Promise<void> {
    const model = this.requireModel();
    try {
      await this.client.rate(model.sessionId, 'initial', score);
      model.setInitialRating(score);
      this.onChange();
    } catch (err) {
      this.surface(err);
    }
  }

  async rateEntry(index: number, score: number): Promise<void> {
    const model = this.requireModel();
    try {
      await this.client.rate(model.sessionId, 'response', score, index);
      model.setEntryRating(index, score);
      this.onChange();
    } catch (err) {
      this.surface(err);
    }
  }

  /** Move to the questionnaire, or report how long the gate still holds. */
  openQuestionnaire(): boolean {
    const model = this.requireModel();
    const remaining = model.remainingSeconds(this.now());
    if (remaining > 0) {
      this.onNotice(`Keep exploring: ${remaining}s before you can finish.`);
      return false;
    }
    model.phase = 'questionnaire';
    this.onChange();
    return true;
  }

  /**
   * Post the questionnaire. The server re-checks the time gate and may still
   * reject; that resyncs the countdown and drops back to exploring.
   */
  async finish(
    r3: number | null,
    r4a: number | null,
    r4b: number | null,
  ): Promise<FinishReply | null> {
    const model = this.requireModel();
    try {
      const reply = await this.client.finish(model.sessionId, r3, r4a, r4b);
      if (reply.accepted) {
        model.phase = 'done';
      } else {
        model.noteGateRejection(reply.remaining_seconds ?? 0, this.now());
        model.phase = 'exploring';
        this.onNotice(
          `Not yet: ${reply.remaining_seconds ?? 0}s of exploration left.`,
        );
      }
      this.onChange();
      return reply;
    } catch (err) {
      this.surface(err);
      return null;
    }
  }

  private requireModel(): UiSessionModel {
    if (this.model === null) {
      throw new Error('no session started');
    }
    return this.model;
  }

  private surface(err: unknown): void {
    if (err instanceof ApiError) {
      this.onNotice(
        err.status === 410 ? `Session closed: ${err.message}` : err.message,
      );
    } else {
      const msg = err instanceof Error ? err.message : String(err);
      this.onNotice(`Cannot reach the service: ${msg}`);
    }
  }
}
