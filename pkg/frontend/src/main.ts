import { ServiceClient } from './api.js';
import { SessionController } from './controller.js';
import { SessionView } from './view.js';
import type { UiConfig } from './types.js';

const client = new ServiceClient();

function suggestionKey(sessionId: string): string {
  return `qfse-suggestions-${sessionId}`;
}

function mountSession(
  root: HTMLElement,
  controller: SessionController,
  cfg: UiConfig,
): void {
  const view = new SessionView(root, controller, cfg);
  view.mount();
}

function startForm(
  root: HTMLElement,
  cfg: UiConfig,
  topics: string[],
): void {
  const form = document.createElement('form');
  form.className = 'start-form';

  const user = document.createElement('input');
  user.placeholder = 'Your id';
  user.required = true;

  const topic = document.createElement('select');
  for (const t of topics) {
    const opt = document.createElement('option');
    opt.value = t;
    opt.textContent = t;
    topic.appendChild(opt);
  }

  const system = document.createElement('select');
  for (const s of cfg.systems) {
    const opt = document.createElement('option');
    opt.value = s;
    opt.textContent = s;
    system.appendChild(opt);
  }

  const go = document.createElement('button');
  go.type = 'submit';
  go.textContent = 'Start session';

  const error = document.createElement('div');
  error.className = 'notice';
  error.hidden = true;

  form.append(user, topic, system, go, error);
  form.addEventListener('submit', (ev) => {
    ev.preventDefault();
    const controller = new SessionController(client);
    controller
      .start(user.value.trim(), topic.value, system.value)
      .then((model) => {
        // keep suggestions for reload; the server log does not carry them
        sessionStorage.setItem(
          suggestionKey(model.sessionId),
          JSON.stringify(model.suggestions),
        );
        location.hash = `s=${model.sessionId}`;
        mountSession(root, controller, cfg);
      })
      .catch((err) => {
        error.textContent = err instanceof Error ? err.message : String(err);
        error.hidden = false;
      });
  });

  root.innerHTML = '';
  root.appendChild(form);
}

async function boot(): Promise<void> {
  const root = document.getElementById('app');
  if (!root) throw new Error('missing #app container');
  const cfg = await client.uiConfig();
  const topics = await client.topics();

  const match = location.hash.match(/^#s=(.+)$/);
  if (match) {
    const sessionId = match[1];
    const cached = sessionStorage.getItem(suggestionKey(sessionId));
    const suggestions: string[] = cached ? JSON.parse(cached) : [];
    const controller = new SessionController(client);
    try {
      await controller.restore(sessionId, cfg.min_explore_seconds, suggestions);
      mountSession(root, controller, cfg);
      return;
    } catch {
      location.hash = '';
    }
  }
  startForm(root, cfg, topics);
}

boot().catch((err) => {
  document.body.textContent = `Cannot reach the session service: ${err}`;
});
