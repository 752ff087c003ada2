"""Pydantic request/response models for the HTTP facade.

Field names mirror the YAML file formats so that a project file and an
API body describe the same document.
"""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field


class CreateProjectRequest(BaseModel):
    description: str = ""


class RequirementBody(BaseModel):
    type: str
    value: Any
    care: str = "Must"


class DataPropertyBody(BaseModel):
    type: str
    value: Any
    provenance: str = "expert"


class PutRequirementsRequest(BaseModel):
    revision: int
    domainRequirements: list[RequirementBody] = Field(default_factory=list)
    dataProperties: list[DataPropertyBody] = Field(default_factory=list)


class ProjectResponse(BaseModel):
    id: str
    revision: int
    description: str
    domainRequirements: list[dict]
    dataProperties: list[dict]
    profileReport: Optional[dict] = None


class RevisionResponse(BaseModel):
    id: str
    revision: int


class EntryBody(BaseModel):
    requirementType: str
    satisfaction: float
    weight: float
    mappedCriteria: list[str]
    note: str = ""


class BreakdownBody(BaseModel):
    familyId: str
    solves: float
    entries: list[EntryBody]


class RankingResponse(BaseModel):
    projectId: str
    breakdowns: list[BreakdownBody]
    diagnostics: dict[str, str] = Field(default_factory=dict)


class WhatIfOverride(BaseModel):
    path: str
    value: str


class WhatIfRequest(BaseModel):
    overrides: list[WhatIfOverride]
    top: Optional[int] = None


class WhatIfResponse(BaseModel):
    before: RankingResponse
    after: RankingResponse


class FamilyBody(BaseModel):
    id: str
    name: str
    description: str = ""
    values: dict[str, list[str]]


class CatalogResponse(BaseModel):
    schemaVersion: int
    version: int
    criteria: list[dict]
    families: list[FamilyBody]


class ErrorResponse(BaseModel):
    detail: str
