/**
 * Rendering of event references and similarity terms as delivered.
 *
 * Reference events become pictures (urn when the level's denominator is a
 * sensible ball count, wheel otherwise); variable events become short
 * textual descriptions. Terms render both arguments side by side under a
 * "how similar?" frame. Only server-delivered documents are rendered.
 */

import { formatFrac, parseLevel } from './fraction.js';
import { renderReference } from './reference.js';
import type { EventRefDoc, TermDoc } from './types.js';

const MAX_URN_BALLS = 20n;

export function describeEventRef(ref: EventRefDoc): string {
  switch (ref.kind) {
    case 'reference': {
      const f = parseLevel(ref.level);
      return `${ref.refset}(${formatFrac(f)})`;
    }
    case 'weighted': {
      const parts = ref.weights.map(([outcome, weight]) => {
        const f = parseLevel(weight);
        return f.num === f.den ? outcome : `${outcome} at weight ${formatFrac(f)}`;
      });
      return `event of ${ref.variable}: ${parts.join(', ')}`;
    }
    case 'label':
      return `${ref.variable}: ${ref.label}`;
    case 'intervals': {
      const parts = ref.intervals.map(([lo, hi]) => `[${lo}, ${hi})`);
      return `${ref.variable} in ${parts.join(' or ')}`;
    }
  }
}

export function renderEventRef(ref: EventRefDoc): HTMLElement {
  if (ref.kind === 'reference') {
    const f = parseLevel(ref.level);
    const el =
      f.den <= MAX_URN_BALLS && f.den > 1n
        ? renderReference({ kind: 'urn', k: Number(f.den), level: ref.level })
        : renderReference({ kind: 'wheel', level: ref.level });
    el.classList.add('event-ref');
    el.title = describeEventRef(ref);
    return el;
  }
  const el = document.createElement('p');
  el.className = 'event-ref description';
  el.textContent = describeEventRef(ref);
  return el;
}

export function renderTerm(term: TermDoc): HTMLElement {
  const wrap = document.createElement('div');
  wrap.className = 'term';
  const frame = document.createElement('p');
  frame.className = 'term-frame';
  frame.textContent = 'similarity of confidence between';
  wrap.appendChild(frame);
  const pair = document.createElement('div');
  pair.className = 'term-pair';
  pair.appendChild(renderEventRef(term.a));
  const and = document.createElement('span');
  and.className = 'term-and';
  and.textContent = 'and';
  pair.appendChild(and);
  pair.appendChild(renderEventRef(term.b));
  wrap.appendChild(pair);
  return wrap;
}

export function describeTerm(term: TermDoc): string {
  return `S(${describeEventRef(term.a)}, ${describeEventRef(term.b)})`;
}
