import { RATING_MAX, RATING_MIN } from './model.js';

/**
 * Five-star rating row. `current` fills stars up to that value; clicks call
 * `onPick` with 1-5. Rebuilt wholesale on every render, so no internal state.
 */
export function starRow(
  caption: string,
  current: number | null,
  onPick: (score: number) => void,
): HTMLElement {
  const row = document.createElement('div');
  row.className = 'stars';

  const label = document.createElement('span');
  label.className = 'stars-caption';
  label.textContent = caption;
  row.appendChild(label);

  for (let score = RATING_MIN; score <= RATING_MAX; score++) {
    const btn = document.createElement('button');
    btn.type = 'button';
    btn.className = 'star';
    btn.textContent = current !== null && score <= current ? '★' : '☆';
    btn.setAttribute('aria-label', `${score} of ${RATING_MAX}`);
    btn.setAttribute(
      'aria-pressed',
      current !== null && score <= current ? 'true' : 'false',
    );
    btn.addEventListener('click', () => onPick(score));
    row.appendChild(btn);
  }
  return row;
}
