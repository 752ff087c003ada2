/**
 * Ranking panel — ordered family cards with the server-computed score,
 * expandable per-requirement breakdown bars, and non-remediable badges
 * for failed headline criteria.
 *
 * Bar widths are exactly the served satisfaction values; the panel does
 * no arithmetic beyond percent formatting.
 */

import type { WorkbenchApi } from '../api';
import { clear, el } from '../dom';
import type { Store } from '../state';
import type { BreakdownBody, RankingBody } from '../types';

/** Criteria whose failure no preprocessing step can remedy. */
const NON_REMEDIABLE_CRITERIA = new Set([
  'explainability',
  'interpretability',
  'training-type',
]);

export function renderBreakdown(breakdown: BreakdownBody): HTMLElement {
  const details = el('div', { class: 'breakdown' });
  for (const entry of breakdown.entries) {
    const row = el('div', { class: 'breakdown-row', 'data-requirement': entry.requirementType });
    const bar = el('div', { class: 'bar-track' }, [
      el('div', {
        class: 'bar-fill',
        style: `width: ${(entry.satisfaction * 100).toFixed(2)}%`,
        'data-satisfaction': String(entry.satisfaction),
      }),
    ]);
    row.append(
      el('span', { class: 'requirement', text: entry.requirementType }),
      bar,
      el('span', { class: 'value', text: entry.satisfaction.toFixed(3) }),
    );
    const failedHard = entry.satisfaction === 0 &&
      entry.mappedCriteria.some((criterion) => NON_REMEDIABLE_CRITERIA.has(criterion));
    if (failedHard) {
      row.append(el('span', { class: 'badge non-remediable', text: 'non-remediable' }));
    }
    if (entry.note) {
      row.append(el('span', { class: 'note', text: entry.note }));
    }
    details.append(row);
  }
  return details;
}

export function renderRankingBody(host: HTMLElement, ranking: RankingBody): void {
  clear(host);
  if (ranking.breakdowns.length === 0) {
    host.append(
      el('p', { class: 'empty', text: 'No families could be ranked — the catalog is empty.' }),
    );
    return;
  }
  const list = el('ol', { class: 'ranking' });
  for (const breakdown of ranking.breakdowns) {
    const card = el('li', { class: 'family-card', 'data-family': breakdown.familyId });
    const header = el('button', { type: 'button', class: 'family-header' }, [
      el('span', { class: 'family-id', text: breakdown.familyId }),
      el('span', { class: 'solves', text: breakdown.solves.toFixed(4) }),
    ]);
    const body = renderBreakdown(breakdown);
    body.hidden = true;
    header.addEventListener('click', () => {
      body.hidden = !body.hidden;
    });
    card.append(header, body);
    list.append(card);
  }
  host.append(list);
  const diagnostics = Object.entries(ranking.diagnostics);
  if (diagnostics.length > 0) {
    const notes = el('ul', { class: 'diagnostics' });
    for (const [familyId, message] of diagnostics) {
      notes.append(el('li', { text: `${familyId}: ${message}` }));
    }
    host.append(notes);
  }
}

export function renderRanking(
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
  const host = el('div', { class: 'ranking-host' });
  container.append(host);
  host.append(el('p', { class: 'status', text: 'Ranking…' }));
  void api
    .getRanking(project.id)
    .then((ranking) => renderRankingBody(host, ranking))
    .catch((error: Error) => {
      clear(host);
      host.append(el('p', { class: 'error', text: error.message }));
    });
}
