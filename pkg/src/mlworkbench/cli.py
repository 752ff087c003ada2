"""Command-line surface for the workbench.

Data goes to stdout, diagnostics to stderr. Exit codes: 0 success,
1 validation/domain error, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import json
import os
import sys

import click

from . import catalog as cat
from . import engine
from . import pipeline as pipe
from . import problem as prob
from . import profiler

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_IO = 3

CATALOG_ENV_VAR = "MLWORKBENCH_CATALOG"


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _read_file(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        _fail(EXIT_IO, f"cannot read {path}: {exc}")


def _load_catalog(path: str | None) -> cat.Catalog:
    if path is None:
        path = os.environ.get(CATALOG_ENV_VAR)
    if path is None:
        path = cat.seed_catalog_path()
    try:
        return cat.load_catalog(_read_file(path))
    except cat.CatalogError as exc:
        _fail(EXIT_DOMAIN, str(exc))


def _load_project(path: str) -> prob.MLProblem:
    try:
        return prob.deserialize_project(_read_file(path))
    except prob.ProblemError as exc:
        _fail(EXIT_DOMAIN, str(exc))


def _emit(doc, fmt: str, table_renderer):
    if fmt == "machine":
        click.echo(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    else:
        table_renderer(doc)


@click.group()
def main():
    """ML problem-solving workbench."""


# -- catalog ----------------------------------------------------------------

@main.group()
def catalog():
    """Catalog inspection and validation."""


@catalog.command("validate")
@click.argument("path")
def catalog_validate(path):
    """Validate a catalog file; exits 1 and lists violations if invalid."""
    raw = _read_file(path)
    try:
        cat.load_catalog(raw)
    except cat.CatalogError as exc:
        _fail(EXIT_DOMAIN, str(exc))
    click.echo("catalog valid")


# -- profile ----------------------------------------------------------------

@main.command()
@click.argument("datafile")
@click.option("--delimiter", default=",", show_default=True)
@click.option("--label", default=None, help="Label column for class-balance checks.")
@click.option("--null-token", "null_tokens", multiple=True, help="Extra null token (repeatable).")
@click.option("--format", "fmt", type=click.Choice(["table", "machine"]), default="table")
def profile(datafile, delimiter, label, null_tokens, fmt):
    """Profile a delimited data file and print the report."""
    raw = _read_file(datafile)
    options = profiler.IngestOptions(
        delimiter=delimiter,
        null_tokens=profiler.DEFAULT_NULL_TOKENS | frozenset(null_tokens),
    )
    try:
        table = profiler.ingest(raw, options)
        report = profiler.profile(table, label_column=label)
    except profiler.ProfilerError as exc:
        _fail(EXIT_DOMAIN, str(exc))
    doc = profiler.report_to_doc(report)

    def render(doc):
        click.echo(f"rows: {doc['rowCount']}  volume: {doc['volumeBucket']}")
        click.echo(
            f"missing: {doc['missingLevel']}  scales similar: {doc['scalesSimilar']}"
            f"  distribution: {doc['distribution']}"
        )
        if doc["classBalanceOk"] is not None:
            click.echo(f"class balance ok: {doc['classBalanceOk']}")
        for c in doc["columns"]:
            extra = ""
            if c.get("inferredType") == "Numerical":
                extra = (
                    f"  mean={c['mean']:.4g} std={c['standardDeviation']:.4g}"
                    f" normality={c['normality']}"
                )
            click.echo(
                f"  {c['name']}: {c.get('inferredType') or 'unknown'}"
                f" nulls={c['nullFraction']:.2%} distinct={c['distinctCount']}{extra}"
            )
        for p in doc["correlatedPairs"]:
            click.echo(f"  correlated: {p['a']} ~ {p['b']} (r={p['r']:.3f})")

    _emit(doc, fmt, render)


# -- rank / explain / what-if ----------------------------------------------

def _ranking_doc(result, top=None):
    breakdowns = result.breakdowns[:top] if top else result.breakdowns
    return {
        "breakdowns": [engine.breakdown_to_doc(b) for b in breakdowns],
        "diagnostics": dict(sorted(result.diagnostics.items())),
    }


def _render_ranking(doc):
    for i, b in enumerate(doc["breakdowns"], start=1):
        click.echo(f"{i:>3}. {b['familyId']:<28} {b['solves']:.4f}")
    for fid, msg in doc["diagnostics"].items():
        click.echo(f"  ! {fid}: {msg}", err=True)


def _rank(project, catalog_obj):
    try:
        return engine.rank_families(project, catalog_obj)
    except engine.UnscorableProblem as exc:
        _fail(EXIT_DOMAIN, str(exc))


@main.command()
@click.argument("projectfile")
@click.option("--catalog", "catalog_path", default=None, envvar=CATALOG_ENV_VAR)
@click.option("--top", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(["table", "machine"]), default="table")
def rank(projectfile, catalog_path, top, fmt):
    """Rank all catalog families against a project."""
    project = _load_project(projectfile)
    catalog_obj = _load_catalog(catalog_path)
    result = _rank(project, catalog_obj)
    _emit(_ranking_doc(result, top), fmt, _render_ranking)


@main.command()
@click.argument("projectfile")
@click.option("--family", required=True)
@click.option("--catalog", "catalog_path", default=None, envvar=CATALOG_ENV_VAR)
@click.option("--format", "fmt", type=click.Choice(["table", "machine"]), default="table")
def explain(projectfile, family, catalog_path, fmt):
    """Show the per-requirement satisfaction breakdown for one family."""
    project = _load_project(projectfile)
    catalog_obj = _load_catalog(catalog_path)
    try:
        af = catalog_obj.family(family)
    except KeyError as exc:
        _fail(EXIT_DOMAIN, str(exc))
    try:
        breakdown = engine.solves(af, project, catalog_obj)
    except (engine.EngineError, cat.MissingCriterionValue) as exc:
        _fail(EXIT_DOMAIN, str(exc))
    doc = engine.breakdown_to_doc(breakdown)

    def render(doc):
        click.echo(f"family: {doc['familyId']}   solves: {doc['solves']:.6f}")
        for e in doc["entries"]:
            click.echo(
                f"  {e['requirementType']:<18} satisfaction={e['satisfaction']:.6f}"
                f" weight={e['weight']:.3f}  [{', '.join(e['mappedCriteria'])}]"
            )
            if e["note"]:
                click.echo(f"      {e['note']}")
        total_w = sum(e["weight"] for e in doc["entries"])
        weighted = sum(e["weight"] * e["satisfaction"] for e in doc["entries"])
        click.echo(f"  sum(weight x satisfaction)/sum(weight) = {weighted / total_w:.6f}")

    _emit(doc, fmt, render)


@main.command()
@click.argument("projectfile")
@click.option(
    "--set",
    "overrides",
    multiple=True,
    required=True,
    help="Override as care.<type>=<care> or value.<type>=<value> (repeatable).",
)
@click.option("--catalog", "catalog_path", default=None, envvar=CATALOG_ENV_VAR)
@click.option("--top", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(["table", "machine"]), default="table")
def whatif(projectfile, overrides, catalog_path, top, fmt):
    """Compare rankings before and after in-memory requirement overrides."""
    project = _load_project(projectfile)
    catalog_obj = _load_catalog(catalog_path)
    modified = project
    for item in overrides:
        path, sep, value = item.partition("=")
        if not sep:
            raise click.UsageError(f"override {item!r} must look like key=value")
        try:
            modified = prob.apply_override(modified, path, value)
        except prob.ProblemError as exc:
            raise click.UsageError(str(exc)) from exc
    before = _rank(project, catalog_obj)
    after = _rank(modified, catalog_obj)
    doc = {"before": _ranking_doc(before, top), "after": _ranking_doc(after, top)}

    def render(doc):
        click.echo("before:")
        _render_ranking(doc["before"])
        click.echo("after:")
        _render_ranking(doc["after"])

    _emit(doc, fmt, render)


# -- pipeline ---------------------------------------------------------------

@main.command()
@click.argument("projectfile")
@click.option("--family", required=True)
@click.option("--catalog", "catalog_path", default=None, envvar=CATALOG_ENV_VAR)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["canonical", "workflow-xml"]),
    default="canonical",
)
@click.option("--profile", "profile_path", default=None, help="Data file to profile for compensation triggers.")
def pipeline(projectfile, family, catalog_path, fmt, profile_path):
    """Compose the processing chain for a project and chosen family."""
    project = _load_project(projectfile)
    catalog_obj = _load_catalog(catalog_path)
    try:
        af = catalog_obj.family(family)
    except KeyError as exc:
        _fail(EXIT_DOMAIN, str(exc))
    report = None
    if profile_path is not None:
        try:
            report = profiler.profile(profiler.ingest(_read_file(profile_path)))
        except profiler.ProfilerError as exc:
            _fail(EXIT_DOMAIN, str(exc))
    chain = pipe.base_template(project.description)
    chain = pipe.ProcessingChain(
        steps=chain.steps, problem_id=project.id, family_id=family
    )
    chain = pipe.apply_compensations(chain, af, profile=report)
    sys.stdout.buffer.write(pipe.export_chain(chain, fmt))


# -- serve ------------------------------------------------------------------

@main.command()
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--store-dir", default="./workbench-store", show_default=True)
@click.option("--catalog", "catalog_path", default=None, envvar=CATALOG_ENV_VAR)
def serve(port, host, store_dir, catalog_path):
    """Run the HTTP service backing the web workbench."""
    import uvicorn

    from .service import create_app

    app = create_app(store_dir, seed_catalog=catalog_path)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
