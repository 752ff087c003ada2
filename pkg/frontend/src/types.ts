/**
 * Shared types mirroring the workbench HTTP API bodies.
 *
 * The UI performs no scoring arithmetic: every number rendered comes from
 * one of these server payloads.
 */

export type CareLevel = 'Not' | 'Could' | 'Should' | 'Must';

export type RequirementType =
  | 'accuracy'
  | 'explainability'
  | 'interpretability'
  | 'adaptability'
  | 'cost-cpu'
  | 'cost-data'
  | 'decision-speed';

export type DataPropertyType =
  | 'labeling'
  | 'volume'
  | 'missing-values'
  | 'data-type'
  | 'seasonality'
  | 'representativity'
  | 'homogeneity'
  | 'distribution';

export interface RequirementBody {
  type: RequirementType;
  value: unknown;
  care: CareLevel;
}

export interface DataPropertyBody {
  type: DataPropertyType;
  value: unknown;
  provenance: 'expert' | 'profiled';
}

export interface ColumnProfileBody {
  name: string;
  inferredType: string | null;
  nullFraction: number;
  distinctCount: number;
  mean?: number;
  standardDeviation?: number;
  normality?: string;
  note?: string;
}

export interface ProfileReportBody {
  rowCount: number;
  volumeBucket: string;
  missingLevel: string;
  dataTypes: string[];
  scalesSimilar: boolean;
  classBalanceOk: boolean | null;
  distribution: string;
  correlatedPairs: Array<{ a: string; b: string; r: number }>;
  columns: ColumnProfileBody[];
}

export interface ProjectBody {
  id: string;
  revision: number;
  description: string;
  domainRequirements: RequirementBody[];
  dataProperties: DataPropertyBody[];
  profileReport: ProfileReportBody | null;
}

export interface RevisionBody {
  id: string;
  revision: number;
}

export interface BreakdownEntryBody {
  requirementType: string;
  satisfaction: number;
  weight: number;
  mappedCriteria: string[];
  note: string;
}

export interface BreakdownBody {
  familyId: string;
  solves: number;
  entries: BreakdownEntryBody[];
}

export interface RankingBody {
  projectId: string;
  breakdowns: BreakdownBody[];
  diagnostics: Record<string, string>;
}

export interface WhatIfOverride {
  path: string;
  value: string;
}

export interface WhatIfBody {
  before: RankingBody;
  after: RankingBody;
}

export interface FamilyBody {
  id: string;
  name: string;
  description: string;
  values: Record<string, string[]>;
}

export interface CatalogBody {
  schemaVersion: number;
  version: number;
  criteria: Array<{
    id: string;
    name: string;
    grade: string;
    rangeKind: string;
    values: string[];
  }>;
  families: FamilyBody[];
}
