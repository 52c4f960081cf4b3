/**
 * Candidate pmf editor.
 *
 * One slider per outcome holds an integer weight; masses are the exact
 * normalized weights, recomputed on every input, so the edited document
 * always sums to one before it can be submitted. The validity indicator
 * flips to an error state (and value() refuses) only when every weight is
 * zero, the one way sliders can fail to define a pmf.
 */

import { formatFrac, normalizeWeights } from './fraction.js';
import type { DistributionDoc, VariableSpecDoc } from './types.js';

export class DistributionEditor {
  readonly element: HTMLElement;
  private readonly variable: VariableSpecDoc;
  private readonly sliders: HTMLInputElement[] = [];
  private readonly massLabels: HTMLElement[] = [];
  private readonly indicator: HTMLElement;

  constructor(variable: VariableSpecDoc, initialWeights?: number[]) {
    this.variable = variable;
    this.element = document.createElement('form');
    this.element.className = 'distribution-editor';
    this.element.addEventListener('submit', (e) => e.preventDefault());

    variable.outcomes.forEach((outcome, index) => {
      const row = document.createElement('label');
      row.className = 'editor-row';
      const name = document.createElement('span');
      name.className = 'outcome-name';
      name.textContent = outcome;
      row.appendChild(name);

      const slider = document.createElement('input');
      slider.type = 'range';
      slider.min = '0';
      slider.max = '100';
      slider.step = '1';
      slider.value = String(initialWeights?.[index] ?? 1);
      slider.addEventListener('input', () => this.refresh());
      this.sliders.push(slider);
      row.appendChild(slider);

      const mass = document.createElement('output');
      mass.className = 'mass-value';
      this.massLabels.push(mass);
      row.appendChild(mass);

      this.element.appendChild(row);
    });

    this.indicator = document.createElement('p');
    this.indicator.className = 'validity-indicator';
    this.indicator.setAttribute('aria-live', 'polite');
    this.element.appendChild(this.indicator);
    this.refresh();
  }

  weights(): number[] {
    return this.sliders.map((s) => Number(s.value));
  }

  setWeights(weights: number[]): void {
    weights.forEach((w, i) => {
      const slider = this.sliders[i];
      if (slider) slider.value = String(w);
    });
    this.refresh();
  }

  get isValid(): boolean {
    return normalizeWeights(this.weights()) !== null;
  }

  private refresh(): void {
    const masses = normalizeWeights(this.weights());
    if (masses === null) {
      this.indicator.textContent = 'invalid: every weight is zero';
      this.indicator.classList.add('invalid');
      this.massLabels.forEach((label) => (label.textContent = ''));
      return;
    }
    this.indicator.textContent = 'valid pmf, masses sum to 1';
    this.indicator.classList.remove('invalid');
    masses.forEach((m, i) => {
      const label = this.massLabels[i];
      if (label) label.textContent = formatFrac(m);
    });
  }

  /** The edited document; null while the editor is in an invalid state. */
  value(): DistributionDoc | null {
    const masses = normalizeWeights(this.weights());
    if (masses === null) return null;
    return {
      form: 'finite-pmf',
      variable: this.variable.name,
      support: [...this.variable.outcomes],
      masses: masses.map(formatFrac),
    };
  }
}
