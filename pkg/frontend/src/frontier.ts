/**
 * Frontier view: the undominated candidates and their pairwise verdicts.
 *
 * Every verdict string is rendered verbatim from the server report and the
 * report's audit id (session id at the served version) is stamped on the
 * table and on each cell, so a displayed verdict can always be traced to
 * the exact server state that issued it. No verdict is computed here.
 */

import { formatFrac, parseLevel } from './fraction.js';
import type { DistributionDoc, FrontierReport } from './types.js';

function memberName(index: number): string {
  return index === 0 ? 'proposal' : `candidate ${index + 1}`;
}

function describeMember(doc: DistributionDoc): string {
  if (doc.form === 'finite-pmf' && doc.support && doc.masses) {
    const parts = doc.support.map((outcome, i) => {
      const mass = doc.masses?.[i];
      return `${outcome}: ${mass === undefined ? '?' : formatFrac(parseLevel(mass))}`;
    });
    return parts.join(', ');
  }
  return `${doc.form} over ${doc.variable}`;
}

export function renderFrontier(report: FrontierReport): HTMLElement {
  const auditId = `${report.id}@v${report.version}`;
  const section = document.createElement('section');
  section.className = 'frontier';
  section.dataset['audit'] = auditId;

  const heading = document.createElement('h3');
  heading.textContent =
    report.members.length > 1
      ? `frontier: ${report.members.length} undominated candidates`
      : 'frontier: a single surviving proposal';
  section.appendChild(heading);

  const audit = document.createElement('p');
  audit.className = 'audit-line';
  audit.textContent = `server verdicts from ${auditId} at level ${formatFrac(parseLevel(report.level))}`;
  section.appendChild(audit);

  const list = document.createElement('ol');
  list.className = 'member-list';
  report.members.forEach((member, i) => {
    const item = document.createElement('li');
    item.textContent = `${memberName(i)}: ${describeMember(member)}`;
    list.appendChild(item);
  });
  section.appendChild(list);

  const table = document.createElement('table');
  table.className = 'verdict-matrix';
  table.dataset['audit'] = auditId;
  const head = document.createElement('tr');
  head.appendChild(document.createElement('th'));
  report.members.forEach((_, i) => {
    const th = document.createElement('th');
    th.scope = 'col';
    th.textContent = memberName(i);
    head.appendChild(th);
  });
  table.appendChild(head);
  report.matrix.forEach((row, i) => {
    const tr = document.createElement('tr');
    const th = document.createElement('th');
    th.scope = 'row';
    th.textContent = memberName(i);
    tr.appendChild(th);
    row.forEach((verdict) => {
      const td = document.createElement('td');
      td.className = `verdict verdict-${verdict}`;
      td.dataset['audit'] = auditId;
      td.textContent = verdict;
      tr.appendChild(td);
    });
    table.appendChild(tr);
  });
  section.appendChild(table);

  if (report.sensitivity_recommended) {
    const note = document.createElement('p');
    note.className = 'sensitivity-note';
    note.textContent =
      'More than one candidate survives; a sensitivity scan across levels is recommended.';
    section.appendChild(note);
  }
  return section;
}
