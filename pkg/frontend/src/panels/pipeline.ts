/**
 * Pipeline panel — render the composed processing chain for a chosen
 * family as an ordered step diagram with injected-step rationales, plus a
 * workflow-XML export download.
 */

import type { WorkbenchApi } from '../api';
import { clear, el } from '../dom';
import type { Store } from '../state';

interface ChainStep {
  kind: string;
  rationale: string;
  boundFamilyId?: string;
}

const BASE_KINDS = new Set([
  'data-retrieval',
  'cleaning',
  'model-training',
  'evaluation',
  'interpretation',
]);

/**
 * Minimal parser for the canonical chain document (a flat two-level
 * mapping with a steps list) — enough to avoid a YAML dependency.
 */
export function parseChainSteps(canonical: string): ChainStep[] {
  const steps: ChainStep[] = [];
  let current: ChainStep | null = null;
  let lastField: 'rationale' | 'boundFamilyId' | null = null;
  let inSteps = false;
  for (const line of canonical.split('\n')) {
    if (/^steps:/.test(line)) {
      inSteps = true;
      continue;
    }
    if (!inSteps) continue;
    const startMatch = line.match(/^- kind:\s*(.+)$/);
    if (startMatch) {
      current = { kind: startMatch[1].trim(), rationale: '' };
      steps.push(current);
      lastField = null;
      continue;
    }
    const fieldMatch = line.match(/^\s{2}(rationale|boundFamilyId):\s*(.*)$/);
    if (fieldMatch && current) {
      lastField = fieldMatch[1] as 'rationale' | 'boundFamilyId';
      const value = fieldMatch[2].trim().replace(/^['"]|['"]$/g, '');
      if (lastField === 'rationale') current.rationale = value;
      else current.boundFamilyId = value;
      continue;
    }
    // Folded continuation of the previous scalar (deeper indentation).
    const continuation = line.match(/^\s{4,}(\S.*)$/);
    if (continuation && current && lastField === 'rationale') {
      current.rationale +=
        ' ' + continuation[1].trim().replace(/['"]$/g, '');
    }
  }
  return steps;
}

export function renderChain(host: HTMLElement, steps: ChainStep[]): void {
  clear(host);
  const list = el('ol', { class: 'chain' });
  for (const step of steps) {
    const injected = !BASE_KINDS.has(step.kind);
    const item = el('li', {
      class: `chain-step${injected ? ' injected' : ''}`,
      'data-kind': step.kind,
    });
    item.append(el('strong', { text: step.kind }));
    if (step.boundFamilyId) {
      item.append(el('span', { class: 'badge', text: step.boundFamilyId }));
    }
    if (step.rationale) {
      item.append(el('p', { class: 'rationale', text: step.rationale }));
    }
    list.append(item);
  }
  host.append(list);
}

export function renderPipeline(
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

  const familySelect = el('select', { class: 'family-select' }) as HTMLSelectElement;
  const chainHost = el('div', { class: 'chain-host' });
  const status = el('p', { class: 'status', role: 'status' });
  const exportButton = el('button', { type: 'button', text: 'Export workflow XML' });

  void api.getCatalog().then((catalog) => {
    for (const family of catalog.families) {
      familySelect.append(el('option', { value: family.id, text: family.name }));
    }
    if (catalog.families.length > 0) load();
  });

  function load(): void {
    const familyId = familySelect.value;
    if (!familyId) return;
    status.textContent = 'Composing…';
    void api
      .getPipeline(project!.id, familyId, 'canonical')
      .then((canonical) => {
        status.textContent = '';
        renderChain(chainHost, parseChainSteps(canonical));
      })
      .catch((error: Error) => {
        status.textContent = error.message;
        status.classList.add('error');
      });
  }

  familySelect.addEventListener('change', load);
  exportButton.addEventListener('click', () => {
    void api
      .getPipeline(project.id, familySelect.value, 'workflow-xml')
      .then((xml) => {
        const blob = new Blob([xml], { type: 'application/xml' });
        const link = el('a', {
          href: URL.createObjectURL(blob),
          download: `chain-${familySelect.value}.bpmn.xml`,
        });
        link.click();
        URL.revokeObjectURL(link.href);
      })
      .catch((error: Error) => {
        status.textContent = error.message;
      });
  });

  container.append(
    el('div', { class: 'pipeline-controls' }, [familySelect, exportButton]),
    status,
    chainHost,
  );
}
