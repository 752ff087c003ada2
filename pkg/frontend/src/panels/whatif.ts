/**
 * What-if panel — care-level sliders per present requirement, live
 * re-ranking through the read-only what-if endpoint, and a side-by-side
 * before/after order with movement arrows.
 *
 * This panel never writes: the only request it issues is the what-if
 * POST, which the server evaluates in memory.
 */

import type { WorkbenchApi } from '../api';
import { clear, debounce, el } from '../dom';
import type { Store } from '../state';
import type { CareLevel, WhatIfBody, WhatIfOverride } from '../types';

const CARE_SCALE: CareLevel[] = ['Not', 'Could', 'Should', 'Must'];

function movementArrow(familyId: string, before: string[], after: string[]): string {
  const from = before.indexOf(familyId);
  const to = after.indexOf(familyId);
  if (from === -1 || to === -1 || from === to) return '·';
  return to < from ? `▲${from - to}` : `▼${to - from}`;
}

export function renderComparison(host: HTMLElement, result: WhatIfBody): void {
  clear(host);
  const beforeIds = result.before.breakdowns.map((b) => b.familyId);
  const afterIds = result.after.breakdowns.map((b) => b.familyId);

  const beforeList = el('ol', { class: 'order before' });
  for (const breakdown of result.before.breakdowns) {
    beforeList.append(
      el('li', { 'data-family': breakdown.familyId }, [
        el('span', { text: breakdown.familyId }),
        el('span', { class: 'solves', text: breakdown.solves.toFixed(4) }),
      ]),
    );
  }
  const afterList = el('ol', { class: 'order after' });
  for (const breakdown of result.after.breakdowns) {
    afterList.append(
      el('li', { 'data-family': breakdown.familyId }, [
        el('span', { class: 'arrow', text: movementArrow(breakdown.familyId, beforeIds, afterIds) }),
        el('span', { text: breakdown.familyId }),
        el('span', { class: 'solves', text: breakdown.solves.toFixed(4) }),
      ]),
    );
  }
  host.append(
    el('div', { class: 'comparison' }, [
      el('div', {}, [el('h4', { text: 'Before' }), beforeList]),
      el('div', {}, [el('h4', { text: 'After' }), afterList]),
    ]),
  );
}

export function renderWhatIf(
  container: HTMLElement,
  api: WorkbenchApi,
  store: Store,
  debounceMs = 250,
): void {
  clear(container);
  const project = store.get().project;
  if (!project) {
    container.append(el('p', { class: 'empty', text: 'Create or open a project first.' }));
    return;
  }
  if (project.domainRequirements.length === 0) {
    container.append(
      el('p', { class: 'empty', text: 'Save at least one requirement to explore what-ifs.' }),
    );
    return;
  }

  const overrides = new Map<string, CareLevel>();
  const comparisonHost = el('div', { class: 'whatif-results' });
  const status = el('p', { class: 'status', role: 'status' });

  const run = debounce(() => {
    const payload: WhatIfOverride[] = [...overrides].map(([type, care]) => ({
      path: `care.${type}`,
      value: care,
    }));
    if (payload.length === 0) {
      clear(comparisonHost);
      status.textContent = 'Baseline — move a slider to explore.';
      return;
    }
    status.textContent = 'Re-ranking…';
    void api
      .whatIf(project.id, payload)
      .then((result) => {
        status.textContent = '';
        renderComparison(comparisonHost, result);
      })
      .catch((error: Error) => {
        status.textContent = error.message;
        status.classList.add('error');
      });
  }, debounceMs);

  const sliders = el('div', { class: 'sliders' });
  for (const requirement of project.domainRequirements) {
    const baseline = CARE_SCALE.indexOf(requirement.care);
    const slider = el('input', {
      type: 'range',
      min: '0',
      max: '3',
      step: '1',
      value: String(baseline),
      'data-requirement': requirement.type,
    }) as HTMLInputElement;
    const careLabel = el('span', { class: 'care-label', text: requirement.care });
    slider.addEventListener('input', () => {
      const care = CARE_SCALE[Number(slider.value)];
      careLabel.textContent = care;
      if (care === requirement.care) overrides.delete(requirement.type);
      else overrides.set(requirement.type, care);
      run();
    });
    sliders.append(
      el('label', { class: 'slider-row' }, [
        el('span', { class: 'requirement', text: requirement.type }),
        slider,
        careLabel,
      ]),
    );
  }

  const reset = el('button', { type: 'button', text: 'Reset to baseline' });
  reset.addEventListener('click', () => {
    overrides.clear();
    renderWhatIf(container, api, store, debounceMs);
  });

  container.append(sliders, reset, status, comparisonHost);
}
