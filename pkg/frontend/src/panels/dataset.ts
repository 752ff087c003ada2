/**
 * Dataset panel — upload a delimited file, display the returned profile
 * report, and show which data properties are auto-filled vs expert-set.
 */

import type { WorkbenchApi } from '../api';
import { clear, el } from '../dom';
import type { Store } from '../state';
import type { ProfileReportBody } from '../types';

function renderReport(report: ProfileReportBody): HTMLElement {
  const section = el('section', { class: 'profile-report' });
  section.append(
    el('p', {}, [
      el('span', { class: 'badge', text: `rows ${report.rowCount}` }),
      el('span', { class: 'badge', text: `volume ${report.volumeBucket}` }),
      el('span', {
        class: `badge missing-${report.missingLevel.toLowerCase()}`,
        text: `missing ${report.missingLevel}`,
      }),
      el('span', { class: 'badge', text: `distribution ${report.distribution}` }),
    ]),
  );
  const table = el('table', { class: 'columns' });
  table.append(
    el('tr', {}, [
      el('th', { text: 'column' }),
      el('th', { text: 'type' }),
      el('th', { text: 'nulls' }),
      el('th', { text: 'distinct' }),
      el('th', { text: 'normality' }),
    ]),
  );
  for (const column of report.columns) {
    table.append(
      el('tr', {}, [
        el('td', { text: column.name }),
        el('td', { text: column.inferredType ?? '—' }),
        el('td', { text: `${(column.nullFraction * 100).toFixed(1)}%` }),
        el('td', { text: String(column.distinctCount) }),
        el('td', { text: column.normality ?? '' }),
      ]),
    );
  }
  section.append(table);
  for (const pair of report.correlatedPairs) {
    section.append(
      el('p', {
        class: 'correlated',
        text: `correlated: ${pair.a} ~ ${pair.b} (r=${pair.r.toFixed(3)})`,
      }),
    );
  }
  return section;
}

export function renderDataset(
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

  const fileInput = el('input', { type: 'file', accept: '.csv,text/csv' }) as HTMLInputElement;
  const labelInput = el('input', {
    type: 'text',
    placeholder: 'label column (optional)',
  }) as HTMLInputElement;
  const upload = el('button', { type: 'button', text: 'Upload and profile' });
  const status = el('p', { class: 'status', role: 'status' });
  const reportHost = el('div');

  upload.addEventListener('click', () => {
    const file = fileInput.files?.[0];
    if (!file) {
      status.textContent = 'Pick a file first.';
      return;
    }
    status.textContent = 'Profiling…';
    void api
      .uploadDataset(project.id, file, labelInput.value || undefined)
      .then(() => api.getProject(project.id))
      .then((fresh) => {
        store.acceptServer(fresh);
        status.textContent = 'Profiled.';
        renderDataset(container, api, store);
      })
      .catch((error: Error) => {
        status.textContent = error.message;
        status.classList.add('error');
      });
  });

  container.append(
    el('div', { class: 'upload-row' }, [fileInput, labelInput, upload]),
    status,
  );

  if (project.profileReport) {
    reportHost.append(renderReport(project.profileReport));
  }
  container.append(reportHost);

  if (project.dataProperties.length > 0) {
    const list = el('ul', { class: 'property-provenance' });
    for (const property of project.dataProperties) {
      list.append(
        el('li', {}, [
          el('strong', { text: property.type }),
          ` = ${JSON.stringify(property.value)} `,
          el('span', {
            class: `badge provenance-${property.provenance}`,
            text: property.provenance === 'profiled' ? 'auto-filled' : 'expert-set',
          }),
        ]),
      );
    }
    container.append(el('h3', { text: 'Data properties' }), list);
  }
}
