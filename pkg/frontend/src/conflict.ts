/**
 * Inline rendering of a rejected answer batch.
 *
 * The server answers 409 with the judgments that close a contradiction;
 * the last entry is always the submitted answer. Nothing was applied, the
 * questions remain open, so the explanation ends with an editable hint
 * rather than a dead end.
 */

import { describeTerm } from './termRender.js';
import type { ErrorBody, JudgmentDoc, Relation } from './types.js';

const REL_TEXT: Record<Relation, string> = {
  gt: 'is more similar than',
  eq: 'is equally similar to',
  lt: 'is less similar than',
};

function renderJudgment(j: JudgmentDoc, isOffending: boolean): HTMLElement {
  const item = document.createElement('li');
  item.className = isOffending ? 'cycle-step offending' : 'cycle-step';
  const text = `${describeTerm(j.lhs)} ${REL_TEXT[j.rel]} ${describeTerm(j.rhs)}`;
  const body = document.createElement('span');
  body.textContent = text;
  item.appendChild(body);
  const origin = document.createElement('small');
  origin.textContent = isOffending
    ? ' (the answer just submitted)'
    : ` (recorded earlier, source ${j.source})`;
  item.appendChild(origin);
  return item;
}

export function renderConflict(body: ErrorBody): HTMLElement {
  const section = document.createElement('section');
  section.className = 'conflict-explanation';
  section.setAttribute('role', 'alert');

  const heading = document.createElement('h3');
  heading.textContent = 'These answers contradict each other';
  section.appendChild(heading);

  const message = document.createElement('p');
  message.className = 'conflict-message';
  message.textContent = body.message;
  section.appendChild(message);

  const cycle = body.cycle ?? [];
  if (cycle.length > 0) {
    const list = document.createElement('ol');
    list.className = 'conflict-cycle';
    cycle.forEach((j, index) => {
      list.appendChild(renderJudgment(j, index === cycle.length - 1));
    });
    section.appendChild(list);
  }

  const hint = document.createElement('p');
  hint.className = 'conflict-hint';
  hint.textContent =
    'Nothing was recorded; the questions are still open. Edit the batch and submit again.';
  section.appendChild(hint);
  return section;
}
