"""File-backed project and catalog store.

One YAML file per project plus one catalog file in a store directory.
Writes go through a temp file and an atomic rename; optimistic revision
checks serialize per-project writers without any database.
"""

from __future__ import annotations

import os
import shutil
import threading
import uuid
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import yaml

from .. import catalog as cat
from .. import problem as prob
from .. import profiler


class StaleRevision(Exception):
    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"stale revision: expected {expected}, store has {actual}")


class NotFound(Exception):
    pass


@dataclass
class StoredProject:
    problem: prob.MLProblem
    revision: int
    profile_report: Optional[profiler.ProfileReport] = None


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_suffix(path.suffix + f".tmp-{uuid.uuid4().hex[:8]}")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


class Store:
    def __init__(self, directory: str | Path, seed_catalog: Optional[str] = None):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._catalog_path = self.directory / "catalog.yaml"
        if not self._catalog_path.exists():
            source = seed_catalog or cat.seed_catalog_path()
            shutil.copyfile(source, self._catalog_path)
        self._catalog_version = 0

    # -- catalog ------------------------------------------------------------

    def load_catalog(self) -> cat.Catalog:
        with open(self._catalog_path, "rb") as fh:
            return cat.load_catalog(fh)

    @property
    def catalog_version(self) -> int:
        return self._catalog_version

    def save_catalog(self, catalog: cat.Catalog) -> int:
        with self._lock:
            _atomic_write(self._catalog_path, cat.serialize_catalog(catalog))
            self._catalog_version += 1
            return self._catalog_version

    # -- projects -----------------------------------------------------------

    def _project_path(self, project_id: str) -> Path:
        safe = project_id.replace("/", "_")
        return self.directory / f"project-{safe}.yaml"

    def list_projects(self) -> list[str]:
        return sorted(
            p.stem.removeprefix("project-") for p in self.directory.glob("project-*.yaml")
        )

    def load(self, project_id: str) -> StoredProject:
        path = self._project_path(project_id)
        if not path.exists():
            raise NotFound(f"no project {project_id!r}")
        doc = yaml.safe_load(path.read_text(encoding="utf-8"))
        problem = prob.deserialize_project(yaml.safe_dump(doc["project"], sort_keys=False))
        report = None
        if doc.get("profileReport") is not None:
            report = profiler.report_from_doc(doc["profileReport"])
        return StoredProject(
            problem=problem, revision=int(doc["revision"]), profile_report=report
        )

    def create(self, description: str) -> StoredProject:
        with self._lock:
            problem = prob.new_project(description)
            stored = StoredProject(problem=problem, revision=1)
            self._write(stored)
            return stored

    def save(
        self, stored: StoredProject, expected_revision: Optional[int] = None
    ) -> StoredProject:
        """Persist with an optimistic revision check; bumps the revision."""
        with self._lock:
            path = self._project_path(stored.problem.id)
            if path.exists():
                current = self.load(stored.problem.id).revision
            else:
                current = 0
            if expected_revision is not None and expected_revision != current:
                raise StaleRevision(expected_revision, current)
            stored = StoredProject(
                problem=stored.problem,
                revision=current + 1,
                profile_report=stored.profile_report,
            )
            self._write(stored)
            return stored

    def _write(self, stored: StoredProject) -> None:
        doc = {
            "revision": stored.revision,
            "project": yaml.safe_load(prob.serialize_project(stored.problem)),
            "profileReport": (
                profiler.report_to_doc(stored.profile_report)
                if stored.profile_report is not None
                else None
            ),
        }
        _atomic_write(
            self._project_path(stored.problem.id),
            yaml.safe_dump(doc, sort_keys=False, allow_unicode=True),
        )
