/**
 * Requirements wizard: care=Not greys the row, invalid accuracy blocks
 * the save, and a successful save round-trips through the server.
 */

import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';

import { WorkbenchApi } from '../src/api';
import { renderWizard } from '../src/panels/wizard';
import { Store } from '../src/state';
import {
  flush,
  installMockServer,
  sampleProject,
  type MockServer,
} from './helpers';

describe('requirements wizard', () => {
  let container: HTMLElement;
  let server: MockServer;
  let store: Store;

  beforeEach(() => {
    container = document.createElement('div');
    document.body.append(container);
    server = installMockServer({
      'PUT /projects/p-1/requirements': { id: 'p-1', revision: 4 },
      'GET /projects/p-1': { ...sampleProject(), revision: 4 },
    });
    store = new Store();
    store.acceptServer(sampleProject());
    renderWizard(container, new WorkbenchApi(), store);
  });

  afterEach(() => {
    vi.unstubAllGlobals();
    container.remove();
  });

  function row(type: string): HTMLElement {
    return container.querySelector(`[data-requirement="${type}"]`)!;
  }

  it('prefills rows from the stored project', () => {
    const accuracy = row('accuracy');
    expect(accuracy.querySelector<HTMLInputElement>('input[type=checkbox]')!.checked).toBe(true);
    expect(accuracy.querySelector<HTMLSelectElement>('select.care')!.value).toBe('Should');
  });

  it('greys a requirement when care drops to Not', () => {
    const care = row('accuracy').querySelector<HTMLSelectElement>('select.care')!;
    care.value = 'Not';
    care.dispatchEvent(new Event('change'));
    expect(row('accuracy').classList.contains('muted')).toBe(true);
    care.value = 'Must';
    care.dispatchEvent(new Event('change'));
    expect(row('accuracy').classList.contains('muted')).toBe(false);
  });

  it('shows a care hint when selecting Must', () => {
    const care = row('accuracy').querySelector<HTMLSelectElement>('select.care')!;
    care.value = 'Must';
    care.dispatchEvent(new Event('change'));
    expect(row('accuracy').querySelector('.care-hint')!.textContent).toBe('full weight');
  });

  it('blocks the save on an invalid accuracy percentage', async () => {
    const value = row('accuracy').querySelector<HTMLInputElement>('input[type=text]')!;
    value.value = '1.7';
    value.dispatchEvent(new Event('change'));
    container.querySelector('form')!.dispatchEvent(new Event('submit'));
    await flush();
    expect(server.writes()).toHaveLength(0); // nothing sent
    expect(container.querySelector('.status')!.textContent).toMatch(/fraction/);
  });

  it('saves and reconciles with the server revision', async () => {
    container.querySelector('form')!.dispatchEvent(new Event('submit'));
    await flush();
    const put = server.writes()[0];
    expect(put.method).toBe('PUT');
    expect(put.url).toContain('/projects/p-1/requirements');
    expect((put.body as { revision: number }).revision).toBe(3);
    expect(store.get().project!.revision).toBe(4);
    expect(store.isDirty()).toBe(false);
  });
});
