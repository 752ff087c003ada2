/**
 * Application bootstrap: project open/create header, panel tabs, and
 * re-rendering on state changes.
 */

import { WorkbenchApi } from './api';
import { clear, el } from './dom';
import { renderDataset } from './panels/dataset';
import { renderPipeline } from './panels/pipeline';
import { renderRanking } from './panels/ranking';
import { renderWhatIf } from './panels/whatif';
import { renderWizard } from './panels/wizard';
import { Store, type AppState } from './state';

const PANELS: Array<{ id: AppState['activePanel']; label: string }> = [
  { id: 'wizard', label: 'Requirements' },
  { id: 'dataset', label: 'Dataset' },
  { id: 'ranking', label: 'Ranking' },
  { id: 'whatif', label: 'What-if' },
  { id: 'pipeline', label: 'Pipeline' },
];

export function mountApp(root: HTMLElement, api: WorkbenchApi, store: Store): void {
  const header = el('header', { class: 'app-header' });
  const description = el('input', {
    type: 'text',
    placeholder: 'project description',
  }) as HTMLInputElement;
  const create = el('button', { type: 'button', text: 'New project' });
  const openId = el('input', { type: 'text', placeholder: 'project id' }) as HTMLInputElement;
  const open = el('button', { type: 'button', text: 'Open' });
  const title = el('span', { class: 'project-title' });
  header.append(description, create, openId, open, title);

  const tabs = el('nav', { class: 'tabs' });
  const panelHost = el('main', { class: 'panel-host' });

  create.addEventListener('click', () => {
    void api
      .createProject(description.value)
      .then((created) => api.getProject(created.id))
      .then((project) => store.acceptServer(project));
  });
  open.addEventListener('click', () => {
    void api
      .getProject(openId.value.trim())
      .then((project) => store.acceptServer(project))
      .catch((error: Error) => store.update({ error: error.message }));
  });

  function renderTabs(state: AppState): void {
    clear(tabs);
    for (const panel of PANELS) {
      const button = el('button', {
        type: 'button',
        class: panel.id === state.activePanel ? 'tab active' : 'tab',
        text: panel.label,
      });
      button.addEventListener('click', () => store.update({ activePanel: panel.id }));
      tabs.append(button);
    }
  }

  function renderPanel(state: AppState): void {
    switch (state.activePanel) {
      case 'wizard':
        renderWizard(panelHost, api, store);
        break;
      case 'dataset':
        renderDataset(panelHost, api, store);
        break;
      case 'ranking':
        renderRanking(panelHost, api, store);
        break;
      case 'whatif':
        renderWhatIf(panelHost, api, store);
        break;
      case 'pipeline':
        renderPipeline(panelHost, api, store);
        break;
    }
  }

  let lastPanel: AppState['activePanel'] | null = null;
  let lastProject: string | null = null;
  let lastRevision = -1;
  store.subscribe((state) => {
    title.textContent = state.project
      ? `${state.project.description || state.project.id} (rev ${state.project.revision})`
      : '';
    renderTabs(state);
    const projectKey = state.project?.id ?? null;
    const revision = state.project?.revision ?? -1;
    if (
      state.activePanel !== lastPanel ||
      projectKey !== lastProject ||
      revision !== lastRevision
    ) {
      lastPanel = state.activePanel;
      lastProject = projectKey;
      lastRevision = revision;
      renderPanel(state);
    }
    if (state.error) {
      title.textContent += ` — ${state.error}`;
    }
  });

  root.append(header, tabs, panelHost);
  renderTabs(store.get());
  renderPanel(store.get());
}

declare global {
  interface Window {
    __MLWORKBENCH_API_BASE__?: string;
  }
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
  const base = window.__MLWORKBENCH_API_BASE__ ?? '';
  mountApp(document.getElementById('app')!, new WorkbenchApi(base), new Store());
}
