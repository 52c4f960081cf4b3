import { describe, expect, it } from 'vitest';

import { renderConflict } from '../src/conflict.js';
import { describeEventRef, describeTerm } from '../src/termRender.js';
import type { ErrorBody, JudgmentDoc, TermDoc } from '../src/types.js';

const RAIN: TermDoc = {
  a: { kind: 'label', variable: 'weather', label: 'rain' },
  b: { kind: 'reference', refset: 'R', level: '3/10' },
};
const RAIN_HIGH: TermDoc = {
  a: { kind: 'label', variable: 'weather', label: 'rain' },
  b: { kind: 'reference', refset: 'R', level: '1/2' },
};

function judgment(lhs: TermDoc, rhs: TermDoc, rel: JudgmentDoc['rel']): JudgmentDoc {
  return { lhs, rhs, rel, source: 'elicited', method: 'direct', timestamp: 1 };
}

describe('term descriptions', () => {
  it('names references, labels, weighted events and intervals', () => {
    expect(describeEventRef({ kind: 'reference', refset: 'R', level: '3/10' })).toBe('R(3/10)');
    expect(describeEventRef({ kind: 'label', variable: 'weather', label: 'rain' })).toBe(
      'weather: rain',
    );
    expect(
      describeEventRef({
        kind: 'weighted',
        variable: 'color',
        weights: [['red', 1], ['green', '1/2']],
      }),
    ).toBe('event of color: red, green at weight 1/2');
    expect(
      describeEventRef({ kind: 'intervals', variable: 'x', intervals: [[0, 0.5]] }),
    ).toBe('x in [0, 0.5)');
    expect(describeTerm(RAIN)).toBe('S(weather: rain, R(3/10))');
  });
});

describe('renderConflict', () => {
  it('shows the message, the full cycle, and marks the submitted answer', () => {
    const body: ErrorBody = {
      code: 'judgment-conflict',
      message: 'judgment contradicts the derived order',
      cycle: [judgment(RAIN, RAIN_HIGH, 'gt'), judgment(RAIN, RAIN_HIGH, 'lt')],
    };
    const el = renderConflict(body);
    expect(el.getAttribute('role')).toBe('alert');
    expect(el.querySelector('.conflict-message')?.textContent).toContain('contradicts');
    const steps = el.querySelectorAll('.cycle-step');
    expect(steps.length).toBe(2);
    expect(steps[1]?.classList.contains('offending')).toBe(true);
    expect(steps[1]?.textContent).toContain('the answer just submitted');
    expect(steps[0]?.textContent).toContain('recorded earlier');
    expect(steps[0]?.textContent).toContain('is more similar than');
    expect(el.querySelector('.conflict-hint')?.textContent).toContain('still open');
  });

  it('renders a cycle-free refusal without a list', () => {
    const el = renderConflict({ code: 'judgment-conflict', message: 'no' });
    expect(el.querySelector('.conflict-cycle')).toBeNull();
  });
});
