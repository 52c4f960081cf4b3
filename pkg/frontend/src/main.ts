/**
 * Page wiring.
 *
 * The base URL comes from the ?api= query parameter, falling back to the
 * address the gateway serves on by default. Session id is kept in the URL
 * hash so a reload re-attaches to the same server-side session; nothing
 * else persists in the browser.
 */

import { GatewayClient } from './api.js';
import { DistributionEditor } from './distributionEditor.js';
import { renderReference } from './reference.js';
import { SessionFlow } from './session.js';
import type { VariableSpecDoc } from './types.js';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

function baseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get('api');
  return fromQuery ?? 'http://127.0.0.1:8000';
}

export function mount(root: HTMLElement): void {
  const client = new GatewayClient(baseUrl());

  root.replaceChildren();
  root.appendChild(el('h1', undefined, 'elicitation workbench'));

  // Reference preview: what R(level) looks like as an urn or a wheel.
  const preview = el('section', 'reference-preview');
  preview.appendChild(el('h2', undefined, 'reference experiment'));
  const previewControls = el('form');
  previewControls.addEventListener('submit', (e) => e.preventDefault());
  const kInput = el('input') as HTMLInputElement;
  kInput.type = 'number';
  kInput.value = '10';
  kInput.min = '1';
  const levelInput = el('input') as HTMLInputElement;
  levelInput.type = 'text';
  levelInput.value = '3/10';
  const previewOut = el('div', 'preview-out');
  const redraw = () => {
    previewOut.replaceChildren(
      renderReference({ kind: 'urn', k: Number(kInput.value), level: levelInput.value }),
      renderReference({ kind: 'wheel', level: levelInput.value }),
    );
  };
  kInput.addEventListener('input', redraw);
  levelInput.addEventListener('input', redraw);
  previewControls.append('balls ', kInput, ' level ', levelInput);
  preview.appendChild(previewControls);
  preview.appendChild(previewOut);
  redraw();
  root.appendChild(preview);

  // The session flow proper.
  const ui = {
    status: el('p', 'session-status'),
    cards: el('div', 'card-stack'),
    notices: el('div', 'notices'),
    frontier: el('div', 'frontier-slot'),
  };
  const flow = new SessionFlow(client, ui);

  const setup = el('section', 'session-setup');
  setup.appendChild(el('h2', undefined, 'session'));
  const form = el('form');
  const nameInput = el('input') as HTMLInputElement;
  nameInput.type = 'text';
  nameInput.value = 'color';
  nameInput.setAttribute('aria-label', 'variable name');
  const outcomesInput = el('input') as HTMLInputElement;
  outcomesInput.type = 'text';
  outcomesInput.value = 'red, green, blue';
  outcomesInput.setAttribute('aria-label', 'outcomes, comma separated');
  const startButton = el('button', undefined, 'start session') as HTMLButtonElement;
  startButton.type = 'submit';
  form.append('variable ', nameInput, ' outcomes ', outcomesInput, ' ', startButton);
  setup.appendChild(form);
  root.appendChild(setup);

  const work = el('section', 'session-work');
  work.append(ui.status, ui.notices, ui.cards);

  const actions = el('div', 'actions');
  const submitButton = el('button', undefined, 'submit answers') as HTMLButtonElement;
  submitButton.type = 'button';
  const moreButton = el('button', undefined, 'more questions') as HTMLButtonElement;
  moreButton.type = 'button';
  const frontierButton = el('button', undefined, 'show frontier') as HTMLButtonElement;
  frontierButton.type = 'button';
  actions.append(moreButton, submitButton, frontierButton);
  work.appendChild(actions);

  const editorSlot = el('div', 'editor-slot');
  work.appendChild(editorSlot);
  work.appendChild(ui.frontier);
  root.appendChild(work);

  let editor: DistributionEditor | null = null;

  form.addEventListener('submit', async (event) => {
    event.preventDefault();
    const variable: VariableSpecDoc = {
      name: nameInput.value.trim(),
      outcomes: outcomesInput.value.split(',').map((s) => s.trim()).filter(Boolean),
    };
    const view = await flow.start(variable);
    window.location.hash = view.id;
    editor = new DistributionEditor(variable);
    const proposeButton = el('button', undefined, 'propose candidate') as HTMLButtonElement;
    proposeButton.type = 'button';
    proposeButton.addEventListener('click', async () => {
      if (editor) await flow.propose(editor);
    });
    editorSlot.replaceChildren(editor.element, proposeButton);
    await flow.loadQuestions();
  });

  moreButton.addEventListener('click', () => void flow.loadQuestions());
  submitButton.addEventListener('click', async () => {
    if (flow.pending.length) {
      const report = await flow.submitPending();
      if (report) await flow.loadQuestions();
    }
  });
  frontierButton.addEventListener('click', () => void flow.showFrontier());
}

const rootElement = document.getElementById('app');
if (rootElement) mount(rootElement);
