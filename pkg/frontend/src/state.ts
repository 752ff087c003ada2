/**
 * Per-open-project application state with a minimal subscription store.
 *
 * The state never diverges from the server revision except for unsaved
 * wizard edits, which carry an explicit dirty flag.
 */

import type { DataPropertyBody, ProjectBody, RequirementBody } from './types';

export interface AppState {
  project: ProjectBody | null;
  /** Unsaved wizard edits; null while the form mirrors the server. */
  draft: {
    domainRequirements: RequirementBody[];
    dataProperties: DataPropertyBody[];
  } | null;
  activePanel: 'wizard' | 'dataset' | 'ranking' | 'whatif' | 'pipeline';
  error: string | null;
}

export type Listener = (state: AppState) => void;

export class Store {
  private state: AppState = {
    project: null,
    draft: null,
    activePanel: 'wizard',
    error: null,
  };
  private listeners = new Set<Listener>();

  get(): AppState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  update(patch: Partial<AppState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  /** Replace state from a fresh server read and drop any stale draft. */
  acceptServer(project: ProjectBody): void {
    this.update({ project, draft: null, error: null });
  }

  isDirty(): boolean {
    return this.state.draft !== null;
  }
}
