/**
 * Pipeline panel: canonical-chain parsing and injected-step rendering.
 */

import { describe, expect, it } from 'vitest';

import { parseChainSteps, renderChain } from '../src/panels/pipeline';

const CANONICAL = `schemaVersion: 1
problemId: p-1
familyId: k-nearest-neighbors
exitCriterion: ''
steps:
- kind: data-retrieval
  rationale: ingest the training data
- kind: cleaning
  rationale: drop malformed records, normalize tokens
- kind: encoding
  rationale: 'family does not take all present attribute types (unsupported attribute
    types: Categorical); encode them [criterion: attribute-types]'
- kind: model-training
  rationale: train the selected algorithm family
  boundFamilyId: k-nearest-neighbors
- kind: evaluation
  rationale: measure against the exit criterion
- kind: interpretation
  rationale: translate results for domain users
`;

describe('pipeline panel', () => {
  it('parses the canonical chain document', () => {
    const steps = parseChainSteps(CANONICAL);
    expect(steps.map((s) => s.kind)).toEqual([
      'data-retrieval',
      'cleaning',
      'encoding',
      'model-training',
      'evaluation',
      'interpretation',
    ]);
    expect(steps[3].boundFamilyId).toBe('k-nearest-neighbors');
  });

  it('marks injected steps and shows their rationale', () => {
    const host = document.createElement('div');
    renderChain(host, parseChainSteps(CANONICAL));
    const injected = [...host.querySelectorAll('.chain-step.injected')];
    expect(injected.map((node) => node.getAttribute('data-kind'))).toEqual(['encoding']);
    expect(injected[0].querySelector('.rationale')!.textContent).toContain(
      'attribute-types',
    );
    expect(host.querySelectorAll('.chain-step')).toHaveLength(6);
  });
});
