/**
 * Requirements wizard — stepwise form capturing domain requirements
 * (value + care each) and the expert-only data properties.
 */

import type { WorkbenchApi } from '../api';
import { clear, el } from '../dom';
import type { Store } from '../state';
import type {
  CareLevel,
  DataPropertyBody,
  RequirementBody,
  RequirementType,
} from '../types';

const CARE_LEVELS: CareLevel[] = ['Not', 'Could', 'Should', 'Must'];

/** Static care-level hints; display text only, never used for scoring. */
const CARE_HINTS: Record<CareLevel, string> = {
  Not: 'ignored',
  Could: 'light weight',
  Should: 'strong weight',
  Must: 'full weight',
};

interface RequirementField {
  type: RequirementType;
  label: string;
  input: 'percent' | 'toggle' | 'budget' | 'speed';
}

const REQUIREMENT_FIELDS: RequirementField[] = [
  { type: 'accuracy', label: 'Minimum accuracy', input: 'percent' },
  { type: 'explainability', label: 'Explainable decisions', input: 'toggle' },
  { type: 'interpretability', label: 'Interpretable model', input: 'toggle' },
  { type: 'adaptability', label: 'Adapts to incremental change', input: 'toggle' },
  { type: 'cost-cpu', label: 'Computation budget', input: 'budget' },
  { type: 'cost-data', label: 'Data budget', input: 'budget' },
  { type: 'decision-speed', label: 'Decision response time', input: 'speed' },
];

const BUDGETS = ['Low', 'Medium', 'High', 'Very High'];

interface ExpertPropertyField {
  type: 'labeling' | 'seasonality' | 'representativity';
  label: string;
  options: string[];
}

const EXPERT_PROPERTIES: ExpertPropertyField[] = [
  { type: 'labeling', label: 'Labeling state', options: ['Labeled', 'Unlabeled', 'ToBeLabeled'] },
  { type: 'seasonality', label: 'Seasonal patterns expected', options: ['no', 'yes'] },
  { type: 'representativity', label: 'Sample representativity', options: ['Low', 'Medium', 'High'] },
];

interface RowState {
  enabled: boolean;
  care: CareLevel;
  raw: string;
}

function defaultRow(field: RequirementField): RowState {
  const raw = field.input === 'percent' ? '0.90'
    : field.input === 'toggle' ? 'yes'
    : field.input === 'budget' ? 'Medium'
    : '100';
  return { enabled: false, care: 'Should', raw };
}

function rowToRequirement(field: RequirementField, row: RowState): RequirementBody | null {
  if (!row.enabled) return null;
  let value: unknown;
  switch (field.input) {
    case 'percent': {
      const parsed = Number(row.raw);
      if (!Number.isFinite(parsed) || parsed <= 0 || parsed > 1) {
        throw new Error(`${field.label}: enter a fraction in (0, 1]`);
      }
      value = parsed;
      break;
    }
    case 'toggle':
      value = row.raw === 'yes';
      break;
    case 'budget':
      value = row.raw;
      break;
    case 'speed': {
      const ms = Number(row.raw);
      if (!Number.isFinite(ms) || ms <= 0) {
        throw new Error(`${field.label}: enter a positive millisecond budget`);
      }
      value = { metric: 'max', milliseconds: ms };
      break;
    }
  }
  return { type: field.type, value, care: row.care };
}

export function renderWizard(
  container: HTMLElement,
  api: WorkbenchApi,
  store: Store,
): void {
  clear(container);
  const project = store.get().project;
  if (!project) {
    container.append(el('p', { class: 'empty', text: 'Create or open a project first.' }));
    return;
  }

  const rows = new Map<RequirementType, RowState>();
  for (const field of REQUIREMENT_FIELDS) {
    const existing = project.domainRequirements.find((r) => r.type === field.type);
    const row = defaultRow(field);
    if (existing) {
      row.enabled = true;
      row.care = existing.care;
      if (field.input === 'percent') row.raw = String(existing.value);
      else if (field.input === 'toggle') row.raw = existing.value ? 'yes' : 'no';
      else if (field.input === 'budget') row.raw = String(existing.value);
      else {
        const speed = existing.value as { milliseconds: number };
        row.raw = String(speed.milliseconds);
      }
    }
    rows.set(field.type, row);
  }

  const expertValues = new Map<string, string>();
  for (const field of EXPERT_PROPERTIES) {
    const existing = project.dataProperties.find(
      (p) => p.type === field.type && p.provenance === 'expert',
    );
    if (existing) {
      expertValues.set(
        field.type,
        field.type === 'seasonality' ? (existing.value ? 'yes' : 'no') : String(existing.value),
      );
    }
  }

  const form = el('form', { class: 'wizard' });
  const status = el('p', { class: 'status', role: 'status' });

  for (const field of REQUIREMENT_FIELDS) {
    const row = rows.get(field.type)!;
    const wrapper = el('div', {
      class: `wizard-row${row.care === 'Not' ? ' muted' : ''}`,
      'data-requirement': field.type,
    });

    const enable = el('input', { type: 'checkbox' }) as HTMLInputElement;
    enable.checked = row.enabled;
    enable.addEventListener('change', () => {
      row.enabled = enable.checked;
      store.update({ draft: collectDraft() });
    });

    const valueInput =
      field.input === 'budget' || field.input === 'toggle'
        ? el('select')
        : el('input', { type: 'text', size: '8' });
    if (valueInput instanceof HTMLSelectElement) {
      const options = field.input === 'budget' ? BUDGETS : ['yes', 'no'];
      for (const option of options) {
        valueInput.append(el('option', { value: option, text: option }));
      }
    }
    (valueInput as HTMLInputElement | HTMLSelectElement).value = row.raw;
    valueInput.addEventListener('change', () => {
      row.raw = (valueInput as HTMLInputElement | HTMLSelectElement).value;
      store.update({ draft: collectDraft() });
    });

    const careSelect = el('select', { class: 'care' }) as HTMLSelectElement;
    for (const care of CARE_LEVELS) {
      careSelect.append(el('option', { value: care, text: care }));
    }
    careSelect.value = row.care;
    const hint = el('span', { class: 'care-hint', text: CARE_HINTS[row.care] });
    careSelect.addEventListener('change', () => {
      row.care = careSelect.value as CareLevel;
      hint.textContent = CARE_HINTS[row.care];
      wrapper.classList.toggle('muted', row.care === 'Not');
      store.update({ draft: collectDraft() });
    });

    wrapper.append(
      el('label', {}, [enable, ` ${field.label}`]),
      valueInput,
      careSelect,
      hint,
    );
    form.append(wrapper);
  }

  const expertSection = el('fieldset', {}, [
    el('legend', { text: 'Known data characteristics' }),
  ]);
  for (const field of EXPERT_PROPERTIES) {
    const select = el('select', { 'data-property': field.type }) as HTMLSelectElement;
    select.append(el('option', { value: '', text: '(unknown)' }));
    for (const option of field.options) {
      select.append(el('option', { value: option, text: option }));
    }
    select.value = expertValues.get(field.type) ?? '';
    select.addEventListener('change', () => {
      if (select.value) expertValues.set(field.type, select.value);
      else expertValues.delete(field.type);
      store.update({ draft: collectDraft() });
    });
    expertSection.append(el('label', {}, [`${field.label} `, select]));
  }
  form.append(expertSection);

  function collectDraft() {
    const domainRequirements: RequirementBody[] = [];
    for (const field of REQUIREMENT_FIELDS) {
      try {
        const body = rowToRequirement(field, rows.get(field.type)!);
        if (body) domainRequirements.push(body);
      } catch {
        // invalid in-progress value; keep the draft without it
      }
    }
    const dataProperties: DataPropertyBody[] = [];
    for (const [type, raw] of expertValues) {
      dataProperties.push({
        type: type as DataPropertyBody['type'],
        value: type === 'seasonality' ? raw === 'yes' : raw,
        provenance: 'expert',
      });
    }
    // Profiled properties on the server are preserved as-is.
    for (const property of project!.dataProperties) {
      if (property.provenance === 'profiled' && !expertValues.has(property.type)) {
        dataProperties.push(property);
      }
    }
    return { domainRequirements, dataProperties };
  }

  const save = el('button', { type: 'submit', text: 'Save requirements' });
  form.append(save, status);
  form.addEventListener('submit', (event) => {
    event.preventDefault();
    const domainRequirements: RequirementBody[] = [];
    try {
      for (const field of REQUIREMENT_FIELDS) {
        const body = rowToRequirement(field, rows.get(field.type)!);
        if (body) domainRequirements.push(body);
      }
    } catch (error) {
      status.textContent = (error as Error).message;
      status.classList.add('error');
      return; // invalid input blocks the save
    }
    status.classList.remove('error');
    const draft = collectDraft();
    void api
      .putRequirements(
        project.id,
        project.revision,
        domainRequirements,
        draft.dataProperties,
      )
      .then(() => api.getProject(project.id))
      .then((fresh) => {
        store.acceptServer(fresh);
        status.textContent = `Saved (revision ${fresh.revision}).`;
      })
      .catch((error: Error) => {
        status.textContent = error.message;
        status.classList.add('error');
        if ((error as { status?: number }).status === 409) {
          // Stale revision: reconcile with the server copy.
          void api.getProject(project.id).then((fresh) => store.acceptServer(fresh));
        }
      });
  });

  container.append(form);
}
