/**
 * Visual rendering of reference events.
 *
 * An urn reference shows k balls with the event's share highlighted; it is
 * only drawn when level * k is a whole number of balls, otherwise a
 * validation message is rendered instead. A wheel reference shows an arc
 * of the unit circle whose length is the level. Captions always state the
 * exact physical probability as served.
 */

import { formatFrac, isInteger, mul, parseLevel, toNumber, type Frac } from './fraction.js';
import type { LevelDoc } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

export type ReferenceSpec =
  | { kind: 'urn'; k: number; level: LevelDoc }
  | { kind: 'wheel'; level: LevelDoc };

function caption(text: string): HTMLElement {
  const el = document.createElement('figcaption');
  el.textContent = text;
  return el;
}

function validationMessage(text: string): HTMLElement {
  const el = document.createElement('p');
  el.className = 'validation-error';
  el.setAttribute('role', 'alert');
  el.textContent = text;
  return el;
}

function parsedLevel(level: LevelDoc): Frac | null {
  try {
    const f = parseLevel(level);
    if (f.num < 0n || f.num > f.den) return null;
    return f;
  } catch {
    return null;
  }
}

function renderUrn(k: number, level: LevelDoc): HTMLElement {
  const figure = document.createElement('figure');
  figure.className = 'reference urn';
  if (!Number.isInteger(k) || k < 1) {
    figure.appendChild(validationMessage(`urn size must be a positive integer, got ${k}`));
    return figure;
  }
  const f = parsedLevel(level);
  if (f === null) {
    figure.appendChild(validationMessage(`level ${String(level)} is not a probability`));
    return figure;
  }
  const share = mul(f, { num: BigInt(k), den: 1n });
  if (!isInteger(share)) {
    figure.appendChild(
      validationMessage(
        `level ${formatFrac(f)} does not pick a whole number of balls from ${k}`,
      ),
    );
    return figure;
  }
  const highlighted = Number(share.num);

  const perRow = Math.min(k, 10);
  const rows = Math.ceil(k / perRow);
  const cell = 24;
  const svg = document.createElementNS(SVG_NS, 'svg');
  svg.setAttribute('viewBox', `0 0 ${perRow * cell} ${rows * cell}`);
  svg.setAttribute('width', String(perRow * cell));
  svg.setAttribute('height', String(rows * cell));
  svg.setAttribute('role', 'img');
  svg.setAttribute(
    'aria-label',
    `urn with ${k} balls, ${highlighted} highlighted`,
  );
  for (let i = 0; i < k; i += 1) {
    const circle = document.createElementNS(SVG_NS, 'circle');
    circle.setAttribute('cx', String((i % perRow) * cell + cell / 2));
    circle.setAttribute('cy', String(Math.floor(i / perRow) * cell + cell / 2));
    circle.setAttribute('r', String(cell / 2 - 3));
    circle.setAttribute('class', i < highlighted ? 'ball hit' : 'ball');
    circle.setAttribute('fill', i < highlighted ? '#2b6cb0' : '#e2e8f0');
    circle.setAttribute('stroke', '#4a5568');
    svg.appendChild(circle);
  }
  figure.appendChild(svg);
  figure.appendChild(
    caption(
      `${highlighted} of ${k} balls, physical probability ${formatFrac(f)}`,
    ),
  );
  return figure;
}

function renderWheel(level: LevelDoc): HTMLElement {
  const figure = document.createElement('figure');
  figure.className = 'reference wheel';
  const f = parsedLevel(level);
  if (f === null) {
    figure.appendChild(validationMessage(`level ${String(level)} is not a probability`));
    return figure;
  }
  const size = 96;
  const r = size / 2 - 4;
  const cx = size / 2;
  const cy = size / 2;
  const svg = document.createElementNS(SVG_NS, 'svg');
  svg.setAttribute('viewBox', `0 0 ${size} ${size}`);
  svg.setAttribute('width', String(size));
  svg.setAttribute('height', String(size));
  svg.setAttribute('role', 'img');
  svg.setAttribute('aria-label', `wheel with an arc of length ${formatFrac(f)}`);

  const rim = document.createElementNS(SVG_NS, 'circle');
  rim.setAttribute('cx', String(cx));
  rim.setAttribute('cy', String(cy));
  rim.setAttribute('r', String(r));
  rim.setAttribute('fill', '#e2e8f0');
  rim.setAttribute('stroke', '#4a5568');
  svg.appendChild(rim);

  const share = toNumber(f);
  if (share >= 1) {
    const full = document.createElementNS(SVG_NS, 'circle');
    full.setAttribute('cx', String(cx));
    full.setAttribute('cy', String(cy));
    full.setAttribute('r', String(r));
    full.setAttribute('fill', '#2b6cb0');
    full.setAttribute('class', 'arc');
    svg.appendChild(full);
  } else if (share > 0) {
    const angle = share * 2 * Math.PI;
    const x = cx + r * Math.sin(angle);
    const y = cy - r * Math.cos(angle);
    const largeArc = share > 0.5 ? 1 : 0;
    const path = document.createElementNS(SVG_NS, 'path');
    path.setAttribute(
      'd',
      `M ${cx} ${cy} L ${cx} ${cy - r} A ${r} ${r} 0 ${largeArc} 1 ${x} ${y} Z`,
    );
    path.setAttribute('fill', '#2b6cb0');
    path.setAttribute('class', 'arc');
    svg.appendChild(path);
  }
  figure.appendChild(svg);
  figure.appendChild(
    caption(`arc of length ${formatFrac(f)}, physical probability ${formatFrac(f)}`),
  );
  return figure;
}

export function renderReference(spec: ReferenceSpec): HTMLElement {
  return spec.kind === 'urn' ? renderUrn(spec.k, spec.level) : renderWheel(spec.level);
}
