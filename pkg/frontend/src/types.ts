/**
 * Document shapes of the gateway JSON API.
 *
 * Every number that must stay exact travels as a ratio string like "3/10"
 * (integers may arrive as plain numbers); the LevelDoc alias covers both.
 * The UI treats these documents as opaque server state: it renders them and
 * sends them back, it never derives verdicts from them locally.
 */

/** An exact level: a JSON number, a ratio string "n/d", or "inf"/"-inf". */
export type LevelDoc = number | string;

export type Relation = 'gt' | 'lt' | 'eq';

export interface ReferenceRefDoc {
  kind: 'reference';
  refset: string;
  level: LevelDoc;
}

export interface WeightedRefDoc {
  kind: 'weighted';
  variable: string;
  weights: Array<[string, LevelDoc]>;
}

export interface LabelRefDoc {
  kind: 'label';
  variable: string;
  label: string;
}

export interface IntervalsRefDoc {
  kind: 'intervals';
  variable: string;
  intervals: Array<[number, number]>;
}

export type EventRefDoc =
  | ReferenceRefDoc
  | WeightedRefDoc
  | LabelRefDoc
  | IntervalsRefDoc;

/** An unordered pair of event references: "how similar are these two?" */
export interface TermDoc {
  a: EventRefDoc;
  b: EventRefDoc;
}

export interface JudgmentDoc {
  lhs: TermDoc;
  rhs: TermDoc;
  rel: Relation;
  source: string;
  method: string;
  timestamp: number;
  extended?: boolean;
}

export interface QuestionDoc {
  id: string;
  lhs: TermDoc;
  rhs: TermDoc;
  hints: Record<string, unknown>;
}

export interface DistributionDoc {
  form: string;
  variable: string;
  support?: string[];
  masses?: LevelDoc[];
  [key: string]: unknown;
}

export interface VariableSpecDoc {
  name: string;
  outcomes: string[];
}

export interface SessionView {
  id: string;
  version: number;
  status: string;
  created: string | null;
  updated: string | null;
  variable: VariableSpecDoc;
  config: Record<string, unknown>;
  proposal: DistributionDoc;
  frontier_size: number;
  open_questions: number;
  judgment_count: number;
  candidate: ProposalResultDoc | null;
}

export interface QuestionsResponse {
  id: string;
  version: number;
  status: string;
  questions: QuestionDoc[];
}

export interface AnswersReport {
  id: string;
  version: number;
  applied: number;
  open_questions: number;
  status: string;
  candidate?: ProposalResultDoc;
}

export interface ProposalResultDoc {
  status: string;
  open_questions: number;
  relation?: string;
  verdict?: Record<string, unknown>;
  message?: string;
}

export interface CandidateResponse {
  id: string;
  version: number;
  status: string;
  result: ProposalResultDoc;
}

export interface FrontierReport {
  id: string;
  version: number;
  status: string;
  proposal: DistributionDoc;
  members: DistributionDoc[];
  /** members x members verdict strings; the diagonal reads "self". */
  matrix: string[][];
  level: LevelDoc;
  levels: LevelDoc[];
  sensitivity_recommended: boolean;
}

/** Structured error body: {code, message, detail}, plus the judgment
 *  cycle when a batch contradicts the session's recorded judgments. */
export interface ErrorBody {
  code: string;
  message: string;
  detail?: unknown;
  cycle?: JudgmentDoc[];
}

export interface AnswerItem {
  question: string;
  relation: Relation;
}
