import type { SessionController } from './controller.js';
import { starRow } from './stars.js';
import type { UiConfig } from './types.js';

/**
 * Renders one session and forwards every user action to the controller.
 * Layout regions, each tagged with data-region:
 *   initial      - accumulated summary draft with its quality stars
 *   stream       - query/response transcript, one star row per response
 *   query        - free-text query box
 *   suggestions  - clickable suggested queries
 *   repeat       - repeat-last-query button
 *   finish       - exploration gate countdown + questionnaire entry
 * Selecting text inside the draft or the transcript prefills the query box
 * and marks the next submit as a highlight query.
 */
export class SessionView {
  private pendingType: 'free_text' | 'highlight' = 'free_text';
  private qR3: number | null = null;
  private qR4a: number | null = null;
  private qR4b: number | null = null;
  private tick: ReturnType<typeof setInterval> | null = null;

  private notice!: HTMLElement;
  private summaryText!: HTMLElement;
  private initialStars!: HTMLElement;
  private stream!: HTMLElement;
  private queryForm!: HTMLFormElement;
  private queryBox!: HTMLInputElement;
  private sendButton!: HTMLButtonElement;
  private spinner!: HTMLElement;
  private suggestionList!: HTMLUListElement;
  private repeatButton!: HTMLButtonElement;
  private finishButton!: HTMLButtonElement;
  private draftSize!: HTMLElement;
  private questionnaire!: HTMLElement;
  private doneNote!: HTMLElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly controller: SessionController,
    private readonly cfg: UiConfig,
  ) {}

  mount(): void {
    this.root.innerHTML = '';
    this.root.appendChild(this.buildSkeleton());
    this.controller.onChange = () => this.render();
    this.controller.onNotice = (text) => this.showNotice(text);
    // keep the finish countdown moving between server calls
    this.tick = setInterval(() => this.render(), 1000);
    this.render();
  }

  dispose(): void {
    if (this.tick !== null) {
      clearInterval(this.tick);
      this.tick = null;
    }
  }

  showNotice(text: string): void {
    this.notice.textContent = text;
    this.notice.hidden = text === '';
  }

  private buildSkeleton(): HTMLElement {
    const wrap = document.createElement('div');
    wrap.className = 'session';

    const banner = document.createElement('div');
    banner.className = 'banner';
    banner.textContent = this.cfg.banner;
    wrap.appendChild(banner);

    this.notice = document.createElement('div');
    this.notice.className = 'notice';
    this.notice.hidden = true;
    wrap.appendChild(this.notice);

    const initial = document.createElement('section');
    initial.dataset.region = 'initial';
    const heading = document.createElement('h2');
    heading.textContent = 'Summary draft';
    this.summaryText = document.createElement('div');
    this.summaryText.className = 'summary-text';
    this.summaryText.addEventListener('mouseup', () => this.captureSelection());
    this.initialStars = document.createElement('div');
    initial.append(heading, this.summaryText, this.initialStars);
    wrap.appendChild(initial);

    this.stream = document.createElement('section');
    this.stream.dataset.region = 'stream';
    this.stream.addEventListener('mouseup', () => this.captureSelection());
    wrap.appendChild(this.stream);

    this.queryForm = document.createElement('form');
    this.queryForm.dataset.region = 'query';
    this.queryBox = document.createElement('input');
    this.queryBox.className = 'query-box';
    this.queryBox.placeholder = 'Ask about the topic';
    this.queryBox.addEventListener('input', () => {
      this.pendingType = 'free_text';
    });
    this.sendButton = document.createElement('button');
    this.sendButton.type = 'submit';
    this.sendButton.className = 'send';
    this.sendButton.textContent = 'Ask';
    this.spinner = document.createElement('span');
    this.spinner.className = 'spinner';
    this.spinner.textContent = 'Fetching…';
    this.spinner.hidden = true;
    this.queryForm.append(this.queryBox, this.sendButton, this.spinner);
    this.queryForm.addEventListener('submit', (ev) => {
      ev.preventDefault();
      void this.sendTyped();
    });
    wrap.appendChild(this.queryForm);

    const suggestions = document.createElement('section');
    suggestions.dataset.region = 'suggestions';
    const sugHeading = document.createElement('h3');
    sugHeading.textContent = 'Try asking about';
    this.suggestionList = document.createElement('ul');
    suggestions.append(sugHeading, this.suggestionList);
    wrap.appendChild(suggestions);

    const controls = document.createElement('section');
    controls.dataset.region = 'controls';
    this.repeatButton = document.createElement('button');
    this.repeatButton.type = 'button';
    this.repeatButton.dataset.region = 'repeat';
    this.repeatButton.textContent = 'Repeat last query';
    this.repeatButton.addEventListener('click', () => {
      this.showNotice('');
      void this.controller.submitQuery('', 'repeat');
    });
    this.finishButton = document.createElement('button');
    this.finishButton.type = 'button';
    this.finishButton.dataset.region = 'finish';
    this.finishButton.addEventListener('click', () => {
      this.showNotice('');
      this.controller.openQuestionnaire();
    });
    this.draftSize = document.createElement('span');
    this.draftSize.className = 'draft-size';
    controls.append(this.repeatButton, this.finishButton, this.draftSize);
    wrap.appendChild(controls);

    this.questionnaire = document.createElement('section');
    this.questionnaire.dataset.region = 'questionnaire';
    this.questionnaire.hidden = true;
    wrap.appendChild(this.questionnaire);

    this.doneNote = document.createElement('div');
    this.doneNote.className = 'done-note';
    this.doneNote.textContent = 'Session recorded. Thank you.';
    this.doneNote.hidden = true;
    wrap.appendChild(this.doneNote);

    return wrap;
  }

  private captureSelection(): void {
    const text = document.getSelection()?.toString().trim() ?? '';
    if (text === '') return;
    this.queryBox.value = text;
    this.pendingType = 'highlight';
  }

  private async sendTyped(): Promise<void> {
    const text = this.queryBox.value.trim();
    if (text === '') return;
    this.showNotice('');
    const type = this.pendingType;
    const entry = await this.controller.submitQuery(text, type);
    if (entry !== null) {
      this.queryBox.value = '';
      this.pendingType = 'free_text';
    }
  }

  render(): void {
    const model = this.controller.model;
    if (model === null) return;
    const busy = this.controller.busy;
    const exploring = model.phase === 'exploring';
    const now = this.controller.nowMs();
    const remaining = model.remainingSeconds(now);

    this.summaryText.textContent = model.initialText;

    this.initialStars.innerHTML = '';
    this.initialStars.appendChild(
      starRow(this.cfg.prompts.r1, model.initialRating, (score) => {
        this.showNotice('');
        void this.controller.rateInitial(score);
      }),
    );

    this.stream.innerHTML = '';
    model.entries.forEach((entry, index) => {
      const item = document.createElement('div');
      item.className = 'entry';

      const queryLine = document.createElement('div');
      queryLine.className = 'entry-query';
      const tag = document.createElement('span');
      tag.className = 'query-type-tag';
      tag.textContent = entry.queryType.replace('_', ' ');
      queryLine.append(tag, ` ${entry.queryText}`);
      item.appendChild(queryLine);

      if (entry.exhausted && entry.responseText === '') {
        const empty = document.createElement('div');
        empty.className = 'entry-empty';
        empty.textContent = 'No more new content for this query.';
        item.appendChild(empty);
      } else {
        const response = document.createElement('div');
        response.className = 'entry-response';
        response.textContent = entry.responseText;
        item.appendChild(response);
        item.appendChild(
          starRow(this.cfg.prompts.r2, entry.rating, (score) => {
            this.showNotice('');
            void this.controller.rateEntry(index, score);
          }),
        );
      }
      this.stream.appendChild(item);
    });

    this.suggestionList.innerHTML = '';
    for (const suggestion of model.suggestions) {
      const li = document.createElement('li');
      const btn = document.createElement('button');
      btn.type = 'button';
      btn.className = 'suggestion';
      btn.textContent = suggestion;
      btn.disabled = busy || !exploring;
      btn.addEventListener('click', () => {
        this.showNotice('');
        void this.controller.submitQuery(suggestion, 'suggested');
      });
      li.appendChild(btn);
      this.suggestionList.appendChild(li);
    }

    this.queryBox.disabled = busy || !exploring;
    this.sendButton.disabled = busy || !exploring;
    this.spinner.hidden = !busy;
    this.repeatButton.disabled = busy || !exploring || !model.canRepeat;

    this.finishButton.disabled = busy || !exploring || remaining > 0;
    this.finishButton.textContent =
      remaining > 0 ? `Finish exploring (${remaining}s)` : 'Finish exploring';
    this.draftSize.textContent = `Draft length: ${model.totalWords} words`;

    this.questionnaire.hidden = model.phase !== 'questionnaire';
    if (model.phase === 'questionnaire') {
      this.renderQuestionnaire();
    }

    this.doneNote.hidden = model.phase !== 'done';
    if (model.phase === 'done') {
      this.dispose();
    }
  }

  private renderQuestionnaire(): void {
    this.questionnaire.innerHTML = '';
    const heading = document.createElement('h3');
    heading.textContent = 'Before you go';
    this.questionnaire.appendChild(heading);

    this.questionnaire.appendChild(
      starRow(this.cfg.prompts.r3, this.qR3, (score) => {
        this.qR3 = score;
        this.render();
      }),
    );
    const preamble = document.createElement('p');
    preamble.className = 'r4-preamble';
    preamble.textContent = this.cfg.prompts.r4_preamble;
    this.questionnaire.appendChild(preamble);
    this.questionnaire.appendChild(
      starRow(this.cfg.prompts.r4a, this.qR4a, (score) => {
        this.qR4a = score;
        this.render();
      }),
    );
    this.questionnaire.appendChild(
      starRow(this.cfg.prompts.r4b, this.qR4b, (score) => {
        this.qR4b = score;
        this.render();
      }),
    );

    const submit = document.createElement('button');
    submit.type = 'button';
    submit.className = 'finish-submit';
    submit.textContent = 'Finish session';
    submit.disabled = this.qR3 === null || this.qR4a === null || this.qR4b === null;
    submit.addEventListener('click', () => {
      this.showNotice('');
      void this.controller.finish(this.qR3, this.qR4a, this.qR4b);
    });
    this.questionnaire.appendChild(submit);
  }
}
