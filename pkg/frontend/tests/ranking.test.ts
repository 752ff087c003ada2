/**
 * Ranking panel: bar widths equal the served satisfaction values
 * (snapshot), non-remediable badges, and the empty-catalog state.
 */

import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';

import { renderBreakdown, renderRankingBody } from '../src/panels/ranking';
import { sampleRanking } from './helpers';

describe('ranking panel', () => {
  let host: HTMLElement;

  beforeEach(() => {
    host = document.createElement('div');
    document.body.append(host);
  });

  afterEach(() => {
    vi.unstubAllGlobals();
    host.remove();
  });

  it('orders family cards exactly as served', () => {
    renderRankingBody(host, sampleRanking());
    const ids = [...host.querySelectorAll('.family-card')].map((card) =>
      card.getAttribute('data-family'),
    );
    expect(ids).toEqual(['decision-tree', 'deep-convolutional-network']);
    const scores = [...host.querySelectorAll('.family-header .solves')].map(
      (node) => node.textContent,
    );
    expect(scores).toEqual(['1.0000', '0.5714']);
  });

  it('breakdown bars carry exactly the served satisfaction values', () => {
    const ranking = sampleRanking();
    renderRankingBody(host, ranking);
    for (const breakdown of ranking.breakdowns) {
      const card = host.querySelector(`[data-family="${breakdown.familyId}"]`)!;
      const bars = [...card.querySelectorAll<HTMLElement>('.bar-fill')];
      expect(bars.map((bar) => bar.dataset.satisfaction)).toEqual(
        breakdown.entries.map((entry) => String(entry.satisfaction)),
      );
      expect(bars.map((bar) => bar.style.width)).toEqual(
        breakdown.entries.map((entry) => `${(entry.satisfaction * 100).toFixed(2)}%`),
      );
    }
  });

  it('breakdown markup snapshot reflects the served numbers verbatim', () => {
    const breakdown = sampleRanking().breakdowns[1];
    const rendered = renderBreakdown(breakdown);
    const summary = [...rendered.querySelectorAll('.breakdown-row')].map((row) => ({
      requirement: row.getAttribute('data-requirement'),
      width: row.querySelector<HTMLElement>('.bar-fill')!.style.width,
      value: row.querySelector('.value')!.textContent,
    }));
    expect(summary).toMatchInlineSnapshot(`
      [
        {
          "requirement": "explainability",
          "value": "0.000",
          "width": "0.00%",
        },
        {
          "requirement": "accuracy",
          "value": "1.000",
          "width": "100.00%",
        },
        {
          "requirement": "labeling",
          "value": "1.000",
          "width": "100.00%",
        },
      ]
    `);
  });

  it('flags failed headline criteria as non-remediable', () => {
    renderRankingBody(host, sampleRanking());
    const failing = host.querySelector(
      '[data-family="deep-convolutional-network"] [data-requirement="explainability"]',
    )!;
    expect(failing.querySelector('.badge.non-remediable')).not.toBeNull();
    const passing = host.querySelector(
      '[data-family="decision-tree"] [data-requirement="explainability"]',
    )!;
    expect(passing.querySelector('.badge.non-remediable')).toBeNull();
  });

  it('shows an empty-state message when the catalog served nothing', () => {
    renderRankingBody(host, { projectId: 'p-1', breakdowns: [], diagnostics: {} });
    expect(host.querySelector('.empty')?.textContent).toMatch(/catalog is empty/);
  });
});
