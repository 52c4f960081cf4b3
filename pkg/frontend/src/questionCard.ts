/**
 * One comparison question, one answer.
 *
 * The card renders the two terms the server delivered and three answer
 * controls: more similar, equally similar, less similar (relative to the
 * left term). The control group works as a radiogroup for the keyboard:
 * arrow keys move focus, Enter or Space answers. The card locks after the
 * first answer so exactly one answer is ever submitted per question.
 */

import { describeTerm, renderTerm } from './termRender.js';
import type { QuestionDoc, Relation } from './types.js';

export interface AnswerChoice {
  relation: Relation;
  label: string;
}

export const ANSWER_CHOICES: AnswerChoice[] = [
  { relation: 'gt', label: 'left is more similar' },
  { relation: 'eq', label: 'equally similar' },
  { relation: 'lt', label: 'left is less similar' },
];

export class QuestionCard {
  readonly question: QuestionDoc;
  readonly element: HTMLElement;
  private answered = false;
  private readonly buttons: HTMLButtonElement[] = [];
  private readonly onAnswer: (relation: Relation) => void;

  constructor(question: QuestionDoc, onAnswer: (relation: Relation) => void) {
    this.question = question;
    this.onAnswer = onAnswer;
    this.element = this.render();
  }

  get isAnswered(): boolean {
    return this.answered;
  }

  private render(): HTMLElement {
    const card = document.createElement('article');
    card.className = 'question-card';
    card.dataset['questionId'] = this.question.id;
    card.setAttribute('aria-label', `comparison ${describeTerm(this.question.lhs)} versus ${describeTerm(this.question.rhs)}`);

    const terms = document.createElement('div');
    terms.className = 'question-terms';
    const left = renderTerm(this.question.lhs);
    left.classList.add('left-term');
    const right = renderTerm(this.question.rhs);
    right.classList.add('right-term');
    terms.appendChild(left);
    terms.appendChild(right);
    card.appendChild(terms);

    const group = document.createElement('div');
    group.className = 'answer-controls';
    group.setAttribute('role', 'radiogroup');
    group.setAttribute('aria-label', 'your answer');
    ANSWER_CHOICES.forEach((choice, index) => {
      const button = document.createElement('button');
      button.type = 'button';
      button.textContent = choice.label;
      button.dataset['relation'] = choice.relation;
      button.setAttribute('role', 'radio');
      button.setAttribute('aria-checked', 'false');
      button.tabIndex = index === 0 ? 0 : -1;
      button.addEventListener('click', () => this.answer(choice.relation, button));
      button.addEventListener('keydown', (event) => this.onKeydown(event, index));
      this.buttons.push(button);
      group.appendChild(button);
    });
    card.appendChild(group);
    return card;
  }

  private onKeydown(event: KeyboardEvent, index: number): void {
    if (event.key === 'ArrowRight' || event.key === 'ArrowDown') {
      event.preventDefault();
      this.focusButton((index + 1) % this.buttons.length);
    } else if (event.key === 'ArrowLeft' || event.key === 'ArrowUp') {
      event.preventDefault();
      this.focusButton((index + this.buttons.length - 1) % this.buttons.length);
    } else if (event.key === 'Enter' || event.key === ' ') {
      event.preventDefault();
      const button = this.buttons[index];
      if (button) this.answer(button.dataset['relation'] as Relation, button);
    }
  }

  private focusButton(index: number): void {
    this.buttons.forEach((b, i) => {
      b.tabIndex = i === index ? 0 : -1;
    });
    this.buttons[index]?.focus();
  }

  private answer(relation: Relation, button: HTMLButtonElement): void {
    if (this.answered) return;
    this.answered = true;
    button.setAttribute('aria-checked', 'true');
    for (const b of this.buttons) b.disabled = true;
    this.element.classList.add('answered');
    this.onAnswer(relation);
  }
}
