/**
 * The session flow: create, answer, propose, inspect.
 *
 * All state is server-authoritative. The controller holds only the session
 * id and the last version token the server issued; every mutation sends
 * that token and adopts the new one from the response. A stale token is
 * surfaced, the latest view is re-fetched, and the user's pending batch is
 * kept for re-submission; it is never silently replayed. A conflicting
 * batch renders the server's cycle explanation inline and leaves the batch
 * editable, matching the server's own rollback.
 */

import { GatewayClient, GatewayError } from './api.js';
import { renderConflict } from './conflict.js';
import { DistributionEditor } from './distributionEditor.js';
import { renderFrontier } from './frontier.js';
import { QuestionCard } from './questionCard.js';
import type {
  AnswerItem,
  AnswersReport,
  DistributionDoc,
  FrontierReport,
  ProposalResultDoc,
  QuestionDoc,
  SessionView,
  VariableSpecDoc,
} from './types.js';

export interface FlowElements {
  status: HTMLElement;
  cards: HTMLElement;
  notices: HTMLElement;
  frontier: HTMLElement;
}

export class SessionFlow {
  readonly client: GatewayClient;
  readonly ui: FlowElements;
  view: SessionView | null = null;
  /** Answers collected from cards, awaiting batch submission. */
  pending: AnswerItem[] = [];
  answersSubmitted = 0;
  private cards: QuestionCard[] = [];

  constructor(client: GatewayClient, ui: FlowElements) {
    this.client = client;
    this.ui = ui;
  }

  get sessionId(): string {
    if (!this.view) throw new Error('no session yet');
    return this.view.id;
  }

  get version(): number {
    if (!this.view) throw new Error('no session yet');
    return this.view.version;
  }

  async start(variable: VariableSpecDoc): Promise<SessionView> {
    this.view = await this.client.createSession(variable);
    this.renderStatus();
    return this.view;
  }

  async loadQuestions(batch = 8): Promise<QuestionDoc[]> {
    const response = await this.client.getQuestions(this.sessionId, batch);
    this.renderCards(response.questions);
    return response.questions;
  }

  private renderCards(questions: QuestionDoc[]): void {
    this.ui.cards.replaceChildren();
    this.cards = questions.map((q) => {
      const card = new QuestionCard(q, (relation) => {
        this.pending.push({ question: q.id, relation });
      });
      this.ui.cards.appendChild(card.element);
      return card;
    });
  }

  /** Submit the collected batch; returns null when a conflict was rendered. */
  async submitPending(): Promise<AnswersReport | null> {
    if (!this.pending.length) throw new Error('no answers collected');
    return this.submitBatch(this.pending);
  }

  async submitBatch(answers: AnswerItem[]): Promise<AnswersReport | null> {
    this.ui.notices.replaceChildren();
    try {
      const report = await this.client.submitAnswers(this.sessionId, this.version, answers);
      this.answersSubmitted += report.applied;
      this.pending = [];
      this.adoptVersion(report.version, report.status);
      return report;
    } catch (err) {
      if (err instanceof GatewayError && err.isConflict) {
        this.ui.notices.appendChild(renderConflict(err.body));
        return null; // batch stays in this.pending, editable
      }
      if (err instanceof GatewayError && err.isStaleVersion) {
        await this.refreshAfterStale();
        return null;
      }
      throw err;
    }
  }

  private async refreshAfterStale(): Promise<void> {
    this.view = await this.client.getSession(this.sessionId);
    const note = document.createElement('p');
    note.className = 'stale-notice';
    note.setAttribute('role', 'alert');
    note.textContent =
      'The session changed elsewhere; showing the latest state. Review and resubmit your batch.';
    this.ui.notices.appendChild(note);
    this.renderStatus();
  }

  async propose(editor: DistributionEditor): Promise<ProposalResultDoc | null> {
    const doc = editor.value();
    if (doc === null) return null; // invalid editor state never reaches the wire
    return this.proposeDocument(doc);
  }

  async proposeDocument(doc: DistributionDoc): Promise<ProposalResultDoc> {
    const response = await this.client.proposeCandidate(this.sessionId, this.version, doc);
    this.adoptVersion(response.version, response.status);
    return response.result;
  }

  async showFrontier(): Promise<FrontierReport> {
    const report = await this.client.getFrontier(this.sessionId);
    this.ui.frontier.replaceChildren(renderFrontier(report));
    this.adoptVersion(report.version, report.status);
    return report;
  }

  private adoptVersion(version: number, status: string): void {
    if (this.view) {
      this.view = { ...this.view, version, status };
    }
    this.renderStatus();
  }

  private renderStatus(): void {
    if (!this.view) return;
    const { id, version, status } = this.view;
    this.ui.status.textContent = `session ${id} at version ${version}: ${status}`;
    this.ui.status.classList.toggle('converged', status === 'converged');
    if (status === 'converged') {
      this.ui.status.textContent += ' (no improvements found; session converged)';
    }
  }
}
