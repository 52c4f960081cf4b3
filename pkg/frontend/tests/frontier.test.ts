import { describe, expect, it } from 'vitest';

import { renderFrontier } from '../src/frontier.js';
import type { DistributionDoc, FrontierReport } from '../src/types.js';

function pmf(masses: string[]): DistributionDoc {
  return {
    form: 'finite-pmf',
    variable: 'season',
    support: ['spring', 'summer', 'autumn', 'winter'].slice(0, masses.length),
    masses,
  };
}

const REPORT: FrontierReport = {
  id: 'abc123',
  version: 17,
  status: 'frontier-ready',
  proposal: pmf(['2/5', '3/10', '1/5', '1/10']),
  members: [pmf(['2/5', '3/10', '1/5', '1/10']), pmf(['1/4', '1/4', '1/4', '1/4'])],
  matrix: [
    ['self', 'incomparable'],
    ['incomparable', 'self'],
  ],
  level: '1/10',
  levels: ['1/10'],
  sensitivity_recommended: true,
};

describe('renderFrontier', () => {
  it('stamps the audit id on the section, the table and every cell', () => {
    const el = renderFrontier(REPORT);
    expect(el.dataset['audit']).toBe('abc123@v17');
    expect(el.querySelector('.verdict-matrix')?.getAttribute('data-audit')).toBe('abc123@v17');
    const cells = el.querySelectorAll('td.verdict');
    expect(cells.length).toBe(4);
    for (const cell of cells) {
      expect(cell.getAttribute('data-audit')).toBe('abc123@v17');
    }
    expect(el.querySelector('.audit-line')?.textContent).toContain('abc123@v17');
    expect(el.querySelector('.audit-line')?.textContent).toContain('level 1/10');
  });

  it('lists members with exact masses and renders verdicts verbatim', () => {
    const el = renderFrontier(REPORT);
    const items = el.querySelectorAll('.member-list li');
    expect(items.length).toBe(2);
    expect(items[0]?.textContent).toContain('proposal: spring: 2/5');
    expect(items[1]?.textContent).toContain('candidate 2: spring: 1/4');
    const cells = [...el.querySelectorAll('td.verdict')].map((c) => c.textContent);
    expect(cells).toEqual(['self', 'incomparable', 'incomparable', 'self']);
    expect(el.querySelector('.verdict-self')).not.toBeNull();
    expect(el.querySelector('.sensitivity-note')).not.toBeNull();
  });

  it('omits the sensitivity note for a single survivor', () => {
    const single: FrontierReport = {
      ...REPORT,
      members: [REPORT.proposal],
      matrix: [['self']],
      sensitivity_recommended: false,
    };
    const el = renderFrontier(single);
    expect(el.querySelector('h3')?.textContent).toContain('single surviving proposal');
    expect(el.querySelector('.sensitivity-note')).toBeNull();
  });
});
