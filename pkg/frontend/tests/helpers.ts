/**
 * Mock-server plumbing for panel tests: a fetch stub that records every
 * request and serves canned payloads, so tests can assert both rendering
 * and the exact network traffic a panel produces.
 */

import { vi } from 'vitest';

import type { ProjectBody, RankingBody, WhatIfBody } from '../src/types';

export interface RecordedRequest {
  method: string;
  url: string;
  body: unknown;
}

export interface MockServer {
  requests: RecordedRequest[];
  writes(): RecordedRequest[];
}

export function installMockServer(
  routes: Record<string, unknown>,
): MockServer {
  const requests: RecordedRequest[] = [];
  const fetchMock = vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const method = (init?.method ?? 'GET').toUpperCase();
    let body: unknown = null;
    if (typeof init?.body === 'string') {
      body = JSON.parse(init.body);
    }
    requests.push({ method, url, body });
    const path = url.replace(/^https?:\/\/[^/]+/, '').split('?')[0];
    const key = `${method} ${path}`;
    if (!(key in routes)) {
      return new Response(JSON.stringify({ detail: `no route ${key}` }), {
        status: 404,
        headers: { 'Content-Type': 'application/json' },
      });
    }
    const payload = routes[key];
    const isText = typeof payload === 'string';
    return new Response(isText ? payload : JSON.stringify(payload), {
      status: 200,
      headers: { 'Content-Type': isText ? 'text/plain' : 'application/json' },
    });
  });
  vi.stubGlobal('fetch', fetchMock);
  return {
    requests,
    writes: () =>
      requests.filter((r) => !['GET', 'HEAD'].includes(r.method)),
  };
}

export function sampleProject(): ProjectBody {
  return {
    id: 'p-1',
    revision: 3,
    description: 'credit approval',
    domainRequirements: [
      { type: 'explainability', value: true, care: 'Must' },
      { type: 'accuracy', value: 0.85, care: 'Should' },
    ],
    dataProperties: [{ type: 'labeling', value: 'Labeled', provenance: 'expert' }],
    profileReport: null,
  };
}

export function sampleRanking(): RankingBody {
  return {
    projectId: 'p-1',
    breakdowns: [
      {
        familyId: 'decision-tree',
        solves: 1.0,
        entries: [
          {
            requirementType: 'explainability',
            satisfaction: 1.0,
            weight: 8,
            mappedCriteria: ['explainability'],
            note: '',
          },
          {
            requirementType: 'accuracy',
            satisfaction: 1.0,
            weight: 2.666667,
            mappedCriteria: ['accuracy'],
            note: '',
          },
          {
            requirementType: 'labeling',
            satisfaction: 1.0,
            weight: 8,
            mappedCriteria: ['training-type'],
            note: '',
          },
        ],
      },
      {
        familyId: 'deep-convolutional-network',
        solves: 0.571429,
        entries: [
          {
            requirementType: 'explainability',
            satisfaction: 0.0,
            weight: 8,
            mappedCriteria: ['explainability'],
            note: '',
          },
          {
            requirementType: 'accuracy',
            satisfaction: 1.0,
            weight: 2.666667,
            mappedCriteria: ['accuracy'],
            note: '',
          },
          {
            requirementType: 'labeling',
            satisfaction: 1.0,
            weight: 8,
            mappedCriteria: ['training-type'],
            note: '',
          },
        ],
      },
    ],
    diagnostics: {},
  };
}

export function sampleWhatIf(): WhatIfBody {
  const before = sampleRanking();
  const after: RankingBody = {
    projectId: 'p-1',
    breakdowns: [...before.breakdowns].reverse().map((b, i) => ({
      ...b,
      solves: i === 0 ? 0.98 : 0.9,
    })),
    diagnostics: {},
  };
  return { before, after };
}

export async function flush(ms = 20): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, ms));
}
