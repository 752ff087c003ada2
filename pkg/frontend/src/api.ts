/**
 * Thin typed client over the workbench HTTP API.
 *
 * Every server interaction in the app funnels through this module so tests
 * can assert exactly which requests a panel issues.
 */

import type {
  CatalogBody,
  DataPropertyBody,
  ProfileReportBody,
  ProjectBody,
  RankingBody,
  RequirementBody,
  RevisionBody,
  WhatIfBody,
  WhatIfOverride,
} from './types';

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = 'ApiError';
  }
}

async function request<T>(
  base: string,
  path: string,
  init?: RequestInit,
): Promise<T> {
  const response = await fetch(base + path, init);
  if (!response.ok) {
    let detail = `${response.status} ${response.statusText}`;
    try {
      const body = (await response.json()) as { detail?: string };
      if (body.detail) detail = body.detail;
    } catch {
      // non-JSON error body; keep the status line
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

function jsonInit(method: string, body: unknown): RequestInit {
  return {
    method,
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(body),
  };
}

export class WorkbenchApi {
  constructor(readonly base: string = '') {}

  createProject(description: string): Promise<RevisionBody> {
    return request(this.base, '/projects', jsonInit('POST', { description }));
  }

  getProject(projectId: string): Promise<ProjectBody> {
    return request(this.base, `/projects/${encodeURIComponent(projectId)}`);
  }

  putRequirements(
    projectId: string,
    revision: number,
    domainRequirements: RequirementBody[],
    dataProperties: DataPropertyBody[],
  ): Promise<RevisionBody> {
    return request(
      this.base,
      `/projects/${encodeURIComponent(projectId)}/requirements`,
      jsonInit('PUT', { revision, domainRequirements, dataProperties }),
    );
  }

  uploadDataset(
    projectId: string,
    file: File,
    label?: string,
  ): Promise<ProfileReportBody> {
    const form = new FormData();
    form.append('file', file);
    const query = label ? `?label=${encodeURIComponent(label)}` : '';
    return request(
      this.base,
      `/projects/${encodeURIComponent(projectId)}/dataset${query}`,
      { method: 'POST', body: form },
    );
  }

  getRanking(projectId: string, top?: number): Promise<RankingBody> {
    const query = top ? `?top=${top}` : '';
    return request(
      this.base,
      `/projects/${encodeURIComponent(projectId)}/ranking${query}`,
    );
  }

  whatIf(
    projectId: string,
    overrides: WhatIfOverride[],
    top?: number,
  ): Promise<WhatIfBody> {
    return request(
      this.base,
      `/projects/${encodeURIComponent(projectId)}/whatif`,
      jsonInit('POST', { overrides, top: top ?? null }),
    );
  }

  async getPipeline(
    projectId: string,
    familyId: string,
    format: 'canonical' | 'workflow-xml' = 'canonical',
  ): Promise<string> {
    const response = await fetch(
      `${this.base}/projects/${encodeURIComponent(projectId)}/pipeline` +
        `?family=${encodeURIComponent(familyId)}&format=${format}`,
    );
    if (!response.ok) {
      throw new ApiError(response.status, `${response.status} ${response.statusText}`);
    }
    return response.text();
  }

  getCatalog(): Promise<CatalogBody> {
    return request(this.base, '/catalog');
  }
}
