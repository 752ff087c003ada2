"""HTTP facade over projects, catalog, profiling, ranking, what-if, and
pipelines. Stateless scoring over a file-backed store; GETs never write."""

from __future__ import annotations

import io
from typing import Optional

from fastapi import FastAPI, File, HTTPException, Query, Response, UploadFile
from fastapi.middleware.cors import CORSMiddleware

from .. import catalog as cat
from .. import engine
from .. import pipeline as pipe
from .. import problem as prob
from .. import profiler
from . import schemas
from .store import NotFound, StaleRevision, Store, StoredProject

DEFAULT_MAX_UPLOAD_BYTES = 20 * 1024 * 1024


def _ranking_response(project_id, result, top=None) -> schemas.RankingResponse:
    breakdowns = result.breakdowns[:top] if top else result.breakdowns
    return schemas.RankingResponse(
        projectId=project_id,
        breakdowns=[
            schemas.BreakdownBody(**engine.breakdown_to_doc(b)) for b in breakdowns
        ],
        diagnostics=result.diagnostics,
    )


def create_app(
    store_dir: str,
    seed_catalog: Optional[str] = None,
    max_upload_bytes: int = DEFAULT_MAX_UPLOAD_BYTES,
    cors_origins: tuple[str, ...] = ("*",),
) -> FastAPI:
    store = Store(store_dir, seed_catalog=seed_catalog)
    app = FastAPI(title="ML problem-solving workbench", version="0.1.0")
    app.state.store = store
    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    def load_or_404(project_id: str) -> StoredProject:
        try:
            return store.load(project_id)
        except NotFound as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    def project_response(stored: StoredProject) -> schemas.ProjectResponse:
        p = stored.problem
        return schemas.ProjectResponse(
            id=p.id,
            revision=stored.revision,
            description=p.description,
            domainRequirements=[prob._requirement_to_doc(r) for r in p.domain_requirements],
            dataProperties=[prob._property_to_doc(d) for d in p.data_properties],
            profileReport=(
                profiler.report_to_doc(stored.profile_report)
                if stored.profile_report
                else None
            ),
        )

    # -- projects -----------------------------------------------------------

    @app.post("/projects", status_code=201, response_model=schemas.RevisionResponse)
    def create_project(body: schemas.CreateProjectRequest):
        stored = store.create(body.description)
        return schemas.RevisionResponse(id=stored.problem.id, revision=stored.revision)

    @app.get("/projects/{project_id}", response_model=schemas.ProjectResponse)
    def get_project(project_id: str):
        return project_response(load_or_404(project_id))

    @app.put(
        "/projects/{project_id}/requirements",
        response_model=schemas.RevisionResponse,
        responses={409: {"model": schemas.ErrorResponse}, 422: {"model": schemas.ErrorResponse}},
    )
    def put_requirements(project_id: str, body: schemas.PutRequirementsRequest):
        stored = load_or_404(project_id)
        try:
            requirements = tuple(
                prob.requirement_from_doc(r.model_dump()) for r in body.domainRequirements
            )
            properties = tuple(
                prob.property_from_doc(p.model_dump()) for p in body.dataProperties
            )
        except prob.ProblemError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        problem = stored.problem
        problem = problem.__class__(
            id=problem.id,
            description=problem.description,
            domain_requirements=requirements,
            data_properties=properties,
            dataset_ref=problem.dataset_ref,
        )
        try:
            saved = store.save(
                StoredProject(problem=problem, revision=0, profile_report=stored.profile_report),
                expected_revision=body.revision,
            )
        except StaleRevision as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return schemas.RevisionResponse(id=project_id, revision=saved.revision)

    # -- dataset ------------------------------------------------------------

    @app.post("/projects/{project_id}/dataset")
    async def post_dataset(
        project_id: str,
        file: UploadFile = File(...),
        delimiter: str = Query(","),
        label: Optional[str] = Query(None),
    ):
        stored = load_or_404(project_id)
        payload = await file.read()
        if len(payload) > max_upload_bytes:
            raise HTTPException(status_code=413, detail="dataset exceeds the upload limit")
        try:
            table = profiler.ingest(payload, profiler.IngestOptions(delimiter=delimiter))
            report = profiler.profile(table, label_column=label)
        except profiler.ProfilerError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        problem = prob.merge_profile(stored.problem, report)
        store.save(
            StoredProject(problem=problem, revision=0, profile_report=report),
            expected_revision=stored.revision,
        )
        return profiler.report_to_doc(report)

    # -- ranking / what-if / pipeline ---------------------------------------

    def rank_or_422(problem: prob.MLProblem):
        try:
            return engine.rank_families(problem, store.load_catalog())
        except engine.UnscorableProblem as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.get("/projects/{project_id}/ranking", response_model=schemas.RankingResponse)
    def get_ranking(project_id: str, top: Optional[int] = Query(None, ge=1)):
        stored = load_or_404(project_id)
        return _ranking_response(project_id, rank_or_422(stored.problem), top)

    @app.post("/projects/{project_id}/whatif", response_model=schemas.WhatIfResponse)
    def post_whatif(project_id: str, body: schemas.WhatIfRequest):
        stored = load_or_404(project_id)
        problem = stored.problem
        before = rank_or_422(problem)
        try:
            for override in body.overrides:
                problem = prob.apply_override(problem, override.path, override.value)
        except prob.ProblemError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        after = rank_or_422(problem)
        return schemas.WhatIfResponse(
            before=_ranking_response(project_id, before, body.top),
            after=_ranking_response(project_id, after, body.top),
        )

    @app.get("/projects/{project_id}/pipeline")
    def get_pipeline(
        project_id: str,
        family: str = Query(...),
        format: str = Query("canonical", pattern="^(canonical|workflow-xml)$"),
    ):
        stored = load_or_404(project_id)
        catalog = store.load_catalog()
        try:
            profile_family = catalog.family(family)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        chain = pipe.base_template(stored.problem.description)
        chain = pipe.ProcessingChain(
            steps=chain.steps, problem_id=project_id, family_id=family
        )
        chain = pipe.apply_compensations(
            chain, profile_family, profile=stored.profile_report
        )
        payload = pipe.export_chain(chain, format)
        media = "application/yaml" if format == "canonical" else "application/xml"
        return Response(content=payload, media_type=media)

    # -- catalog ------------------------------------------------------------

    def catalog_response() -> schemas.CatalogResponse:
        catalog = store.load_catalog()
        return schemas.CatalogResponse(
            schemaVersion=catalog.schema_version,
            version=store.catalog_version,
            criteria=[
                {
                    "id": c.id,
                    "name": c.name,
                    "grade": c.grade,
                    "rangeKind": c.range_kind,
                    "values": list(c.allowed_values),
                }
                for c in catalog.criteria
            ],
            families=[
                schemas.FamilyBody(
                    id=f.id,
                    name=f.name,
                    description=f.description,
                    values={cid: list(v) for cid, v in f.criterion_values.items()},
                )
                for f in catalog.families
            ],
        )

    @app.get("/catalog", response_model=schemas.CatalogResponse)
    def get_catalog():
        return catalog_response()

    @app.get("/catalog/families", response_model=list[schemas.FamilyBody])
    def get_families():
        return catalog_response().families

    @app.put("/catalog/families/{family_id}", response_model=schemas.FamilyBody)
    def put_family(family_id: str, body: schemas.FamilyBody):
        if body.id != family_id:
            raise HTTPException(status_code=422, detail="body id must match the path id")
        catalog = store.load_catalog()
        profile = cat.AlgorithmFamilyProfile(
            id=body.id,
            name=body.name,
            description=body.description,
            criterion_values={cid: tuple(v) for cid, v in body.values.items()},
        )
        updated = catalog.with_family(profile)
        violations = cat.validate_catalog(updated)
        if violations:
            raise HTTPException(status_code=422, detail="; ".join(violations))
        store.save_catalog(updated)
        return body

    return app
