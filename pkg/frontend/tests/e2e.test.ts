/**
 * Full scripted session against a live gateway process.
 *
 * The test spawns the real server, then drives the UI controller through
 * the DOM exactly as a user would: create a session, click answer buttons
 * on rendered cards, submit batches, edit a candidate pmf, propose it until
 * the server reaches a verdict, and render the frontier. Every verdict
 * asserted here comes back from the server; a deliberately contradictory
 * batch and a stale version token exercise both conflict paths.
 */

import { spawn, type ChildProcess } from 'node:child_process';
import { mkdtempSync, rmSync } from 'node:fs';
import { request } from 'node:http';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { GatewayClient, type FetchLike } from '../src/api.js';
import { DistributionEditor } from '../src/distributionEditor.js';
import { SessionFlow, type FlowElements } from '../src/session.js';

const PORT = 8791;
const BASE = `http://127.0.0.1:${PORT}`;

/** fetch built on node:http, injected so the client talks real sockets
 *  without the DOM emulator's cross-origin restrictions. */
const nodeFetch: FetchLike = (input, init = {}) =>
  new Promise((resolve, reject) => {
    const req = request(
      input,
      { method: init.method ?? 'GET', headers: init.headers ?? {} },
      (res) => {
        const chunks: Buffer[] = [];
        res.on('data', (chunk: Buffer) => chunks.push(chunk));
        res.on('end', () => {
          const status = res.statusCode ?? 0;
          const text = Buffer.concat(chunks).toString('utf8');
          resolve({ status, ok: status >= 200 && status < 300, text: async () => text });
        });
      },
    );
    req.on('error', reject);
    if (init.body !== undefined) req.write(init.body);
    req.end();
  });

let server: ChildProcess;
let storeDir: string;

function newClient(): GatewayClient {
  return new GatewayClient(BASE, { fetchImpl: nodeFetch, getRetries: 1, retryDelayMs: 100 });
}

beforeAll(async () => {
  storeDir = mkdtempSync(join(tmpdir(), 'elicit-ui-e2e-'));
  server = spawn(
    'strengthlab',
    ['serve', '--store', storeDir, '--addr', `127.0.0.1:${PORT}`],
    { stdio: 'ignore' },
  );
  const client = newClient();
  const deadline = Date.now() + 60_000;
  for (;;) {
    try {
      const health = await client.health();
      if (health.status === 'ok') return;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error('gateway did not come up');
    await new Promise((r) => setTimeout(r, 300));
  }
}, 90_000);

afterAll(() => {
  server?.kill();
  rmSync(storeDir, { recursive: true, force: true });
});

function makeUi(): FlowElements {
  const root = document.createElement('div');
  document.body.appendChild(root);
  const add = (cls: string) => {
    const el = document.createElement('div');
    el.className = cls;
    root.appendChild(el);
    return el;
  };
  return {
    status: add('session-status'),
    cards: add('question-cards'),
    notices: add('notices'),
    frontier: add('frontier-slot'),
  };
}

/** Click one answer button on every rendered card; returns the card count. */
function answerAllCards(ui: FlowElements, relation: string): number {
  const cards = ui.cards.querySelectorAll('.question-card');
  for (const card of cards) {
    const button = card.querySelector<HTMLButtonElement>(
      `button[data-relation="${relation}"]`,
    );
    expect(button).not.toBeNull();
    button?.click();
  }
  return cards.length;
}

describe('scripted session against the live gateway', () => {
  it(
    'runs create, answers, conflict, candidate and frontier end to end',
    async () => {
      const ui = makeUi();
      const flow = new SessionFlow(newClient(), ui);

      const view = await flow.start({
        name: 'season',
        outcomes: ['spring', 'summer', 'autumn', 'winter'],
      });
      expect(view.id).toBeTruthy();
      expect(view.version).toBeGreaterThanOrEqual(0);
      expect(ui.status.textContent).toContain(`session ${view.id}`);

      // Drain the initial questions by answering through the cards. On the
      // first batch, sneak in a contradictory pair and check the server's
      // cycle explanation is rendered and nothing was recorded.
      let conflictExercised = false;
      let drained = false;
      for (let round = 0; round < 25 && !drained; round += 1) {
        const questions = await flow.loadQuestions(16);
        if (questions.length === 0) {
          drained = true;
          break;
        }

        if (!conflictExercised) {
          conflictExercised = true;
          const target = questions[0];
          expect(target).toBeDefined();
          const versionBefore = flow.version;
          const judgmentsBefore = flow.view?.judgment_count ?? 0;
          const outcome = await flow.submitBatch([
            { question: target!.id, relation: 'gt' },
            { question: target!.id, relation: 'lt' },
          ]);
          expect(outcome).toBeNull();
          const conflict = ui.notices.querySelector('.conflict-explanation');
          expect(conflict).not.toBeNull();
          expect(conflict?.getAttribute('role')).toBe('alert');
          const steps = conflict!.querySelectorAll('.cycle-step');
          expect(steps.length).toBeGreaterThanOrEqual(2);
          expect(steps[steps.length - 1]?.classList.contains('offending')).toBe(true);
          expect(steps[steps.length - 1]?.textContent).toContain('the answer just submitted');
          // the server rolled the whole batch back
          expect(flow.version).toBe(versionBefore);
          const fresh = await flow.client.getSession(flow.sessionId);
          expect(fresh.version).toBe(versionBefore);
          expect(fresh.judgment_count).toBe(judgmentsBefore);
        }

        const clicked = answerAllCards(ui, 'eq');
        expect(clicked).toBe(questions.length);
        expect(flow.pending.length).toBe(questions.length);
        const report = await flow.submitPending();
        expect(report).not.toBeNull();
        expect(report!.applied).toBe(questions.length);
      }
      expect(drained).toBe(true);
      expect(conflictExercised).toBe(true);

      // Edit a candidate pmf and propose until the server reaches a verdict,
      // answering each follow-up batch it opens along the way.
      const editor = new DistributionEditor(flow.view!.variable);
      editor.setWeights([8, 6, 4, 2]);
      expect(editor.isValid).toBe(true);
      expect(editor.value()?.masses).toEqual(['2/5', '3/10', '1/5', '1/10']);

      let result = await flow.propose(editor);
      expect(result).not.toBeNull();
      for (let round = 0; round < 25 && result!.status === 'needs-answers'; round += 1) {
        const questions = await flow.loadQuestions(16);
        expect(questions.length).toBeGreaterThan(0);
        answerAllCards(ui, 'eq');
        const report = await flow.submitPending();
        expect(report).not.toBeNull();
        result = await flow.propose(editor);
        expect(result).not.toBeNull();
      }
      expect(['accepted', 'rejected', 'frontier']).toContain(result!.status);
      expect(flow.answersSubmitted).toBeGreaterThanOrEqual(10);

      // Render the frontier; every verdict cell must carry the audit id of
      // the exact server state that issued it, with "self" on the diagonal.
      const report = await flow.showFrontier();
      expect(report.members.length).toBeGreaterThanOrEqual(1);
      report.matrix.forEach((row, i) => expect(row[i]).toBe('self'));

      const auditId = `${report.id}@v${report.version}`;
      const rendered = ui.frontier.querySelector('.frontier');
      expect(rendered).not.toBeNull();
      expect(rendered!.getAttribute('data-audit')).toBe(auditId);
      const cells = ui.frontier.querySelectorAll('td.verdict');
      expect(cells.length).toBe(report.members.length ** 2);
      for (const cell of cells) {
        expect(cell.getAttribute('data-audit')).toBe(auditId);
        expect(cell.textContent).not.toBe('');
      }
      const renderedVerdicts = [...cells].map((c) => c.textContent);
      expect(renderedVerdicts).toEqual(report.matrix.flat());
      expect(ui.status.textContent).toContain(`version ${report.version}`);
    },
    120_000,
  );

  it('refuses a stale version token, re-fetches, and never replays silently', async () => {
    const ui = makeUi();
    const flow = new SessionFlow(newClient(), ui);
    await flow.start({ name: 'mood', outcomes: ['calm', 'tense', 'mixed'] });

    const questions = await flow.loadQuestions(8);
    expect(questions.length).toBeGreaterThanOrEqual(2);

    const applied = await flow.submitBatch([{ question: questions[0]!.id, relation: 'eq' }]);
    expect(applied).not.toBeNull();
    const trueVersion = flow.version;

    // pretend this tab never saw the last write
    flow.view = { ...flow.view!, version: trueVersion - 1 };
    const outcome = await flow.submitBatch([{ question: questions[1]!.id, relation: 'eq' }]);
    expect(outcome).toBeNull();

    const notice = ui.notices.querySelector('.stale-notice');
    expect(notice).not.toBeNull();
    expect(notice?.getAttribute('role')).toBe('alert');
    expect(flow.version).toBe(trueVersion);

    // the refused answer was not recorded behind the user's back
    const fresh = await flow.client.getSession(flow.sessionId);
    expect(fresh.version).toBe(trueVersion);
  });

  it('never proposes an invalid editor state', async () => {
    const ui = makeUi();
    const flow = new SessionFlow(newClient(), ui);
    const view = await flow.start({ name: 'coin', outcomes: ['heads', 'tails'] });

    const editor = new DistributionEditor(view.variable);
    editor.setWeights([0, 0]);
    expect(editor.isValid).toBe(false);
    const result = await flow.propose(editor);
    expect(result).toBeNull();
    // the server never saw a proposal, so the version token is unchanged
    const fresh = await flow.client.getSession(flow.sessionId);
    expect(fresh.version).toBe(view.version);
  });
});
