import { describe, expect, it } from 'vitest';

import { DistributionEditor } from '../src/distributionEditor.js';

const VARIABLE = { name: 'color', outcomes: ['red', 'green', 'blue'] };

describe('DistributionEditor', () => {
  it('auto-renormalizes weights into exact masses', () => {
    const editor = new DistributionEditor(VARIABLE, [2, 3, 5]);
    const doc = editor.value()!;
    expect(doc.form).toBe('finite-pmf');
    expect(doc.support).toEqual(['red', 'green', 'blue']);
    expect(doc.masses).toEqual(['1/5', '3/10', '1/2']);
  });

  it('re-renders masses as sliders move', () => {
    const editor = new DistributionEditor(VARIABLE, [1, 1, 1]);
    const sliders = Array.from(
      editor.element.querySelectorAll('input[type="range"]'),
    ) as HTMLInputElement[];
    sliders[0]!.value = '2';
    sliders[0]!.dispatchEvent(new Event('input', { bubbles: true }));
    expect(editor.value()!.masses).toEqual(['1/2', '1/4', '1/4']);
    const labels = Array.from(editor.element.querySelectorAll('.mass-value'));
    expect(labels.map((l) => l.textContent)).toEqual(['1/2', '1/4', '1/4']);
  });

  it('marks the all-zero state invalid and refuses to emit a document', () => {
    const editor = new DistributionEditor(VARIABLE, [0, 0, 0]);
    expect(editor.isValid).toBe(false);
    expect(editor.value()).toBeNull();
    const indicator = editor.element.querySelector('.validity-indicator')!;
    expect(indicator.classList.contains('invalid')).toBe(true);
    expect(indicator.textContent).toContain('invalid');

    editor.setWeights([0, 0, 4]);
    expect(editor.isValid).toBe(true);
    expect(editor.value()!.masses).toEqual(['0', '0', '1']);
    expect(indicator.classList.contains('invalid')).toBe(false);
  });
});
