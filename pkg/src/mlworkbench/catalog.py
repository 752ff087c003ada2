"""Canonical vocabulary and the algorithm-family repository.

Holds the linguistic scales, the A..D weight grades, the 27 selection
criteria, and the editable catalog of algorithm-family profiles. The
catalog is data, not code: it ships as a YAML file that users may edit,
and everything here validates rather than hardcodes family values.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import yaml

CATALOG_SCHEMA_VERSION = 1


class CatalogError(Exception):
    """Raised when a catalog file cannot be parsed or fails validation."""


# ---------------------------------------------------------------------------
# Linguistic scales
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Scale:
    name: str
    labels: tuple[str, ...]

    def rank(self, label: str) -> int:
        """1-based rank of a label; strict total order within the scale."""
        try:
            return self.labels.index(label) + 1
        except ValueError:
            raise KeyError(f"unknown label {label!r} on scale {self.name!r}") from None

    def __contains__(self, label: str) -> bool:
        return label in self.labels


#: Canonical 4-point scale used by cost budgets and the Complement operator.
CANONICAL = Scale("canonical", ("Low", "Medium", "High", "Very High"))
#: 4-level auxiliary scale used by tolerance-style criteria (None = rank 1).
WITH_NONE = Scale("with-none", ("None", "Low", "Medium", "High"))
#: 3-level scale used by complexity/tolerance criteria without a None level.
THREE_LEVEL = Scale("three-level", ("Low", "Medium", "High"))
#: Parallelism potential; Partial sits between None and High.
PARALLELISM = Scale("parallelism", ("None", "Partial", "High"))

SCALES = {s.name: s for s in (CANONICAL, WITH_NONE, THREE_LEVEL, PARALLELISM)}


def rank(label: str, scale: Scale = CANONICAL) -> int:
    return scale.rank(label)


# ---------------------------------------------------------------------------
# Weight grades
# ---------------------------------------------------------------------------

#: Grade letters ordered from most to least severe.
GRADES = ("A", "A-B", "B", "B-C", "C", "D")

# Doubling per full grade reflects the escalating damage of failing the
# criterion; mixed grades take the arithmetic mean of their neighbours.
GRADE_WEIGHTS = {
    "A": 8.0,
    "A-B": 6.0,
    "B": 4.0,
    "B-C": 3.0,
    "C": 2.0,
    "D": 1.0,
}


def grade_weight(grade: str) -> float:
    try:
        return GRADE_WEIGHTS[grade]
    except KeyError:
        raise KeyError(f"unknown weight grade {grade!r}") from None


# ---------------------------------------------------------------------------
# Criteria and families
# ---------------------------------------------------------------------------

RANGE_KINDS = ("ordered-linguistic", "boolean", "categorical-set", "accuracy-bucket")

#: Representative numerics for the accuracy buckets, needed for the
#: ratio-style accuracy satisfaction arithmetic.
ACCURACY_BUCKETS = {
    "<=80%": 0.75,
    "[80%,90%]": 0.85,
    ">=90%": 0.95,
}


@dataclass(frozen=True)
class SelectionCriterion:
    id: str
    name: str
    grade: str
    range_kind: str
    allowed_values: tuple[str, ...]

    @property
    def weight(self) -> float:
        return grade_weight(self.grade)


@dataclass(frozen=True)
class AlgorithmFamilyProfile:
    id: str
    name: str
    description: str
    # criterion id -> non-empty tuple of values drawn from the criterion's
    # allowed range; several values mean family members differ.
    criterion_values: dict[str, tuple[str, ...]]

    def values(self, criterion_id: str) -> tuple[str, ...]:
        try:
            return self.criterion_values[criterion_id]
        except KeyError:
            raise MissingCriterionValue(self.id, criterion_id) from None


class MissingCriterionValue(Exception):
    def __init__(self, family_id: str, criterion_id: str):
        self.family_id = family_id
        self.criterion_id = criterion_id
        super().__init__(f"family {family_id!r} has no value for criterion {criterion_id!r}")


@dataclass(frozen=True)
class Catalog:
    schema_version: int
    criteria: tuple[SelectionCriterion, ...]
    families: tuple[AlgorithmFamilyProfile, ...]

    def criterion(self, criterion_id: str) -> SelectionCriterion:
        c = self.criteria_by_id.get(criterion_id)
        if c is None:
            raise KeyError(f"unknown criterion {criterion_id!r}")
        return c

    def family(self, family_id: str) -> AlgorithmFamilyProfile:
        f = self.families_by_id.get(family_id)
        if f is None:
            raise KeyError(f"unknown family {family_id!r}")
        return f

    @property
    def criteria_by_id(self) -> dict[str, SelectionCriterion]:
        return {c.id: c for c in self.criteria}

    @property
    def families_by_id(self) -> dict[str, AlgorithmFamilyProfile]:
        return {f.id: f for f in self.families}

    def with_family(self, profile: AlgorithmFamilyProfile) -> "Catalog":
        """Copy-on-write update: replace or append one family profile."""
        families = tuple(
            profile if f.id == profile.id else f for f in self.families
        )
        if profile.id not in {f.id for f in families}:
            families = families + (profile,)
        return Catalog(self.schema_version, self.criteria, families)


# Well-known criterion ids referenced by the requirement mapping and the
# compensation rules.
TRAINING_TYPE = "training-type"
EXPLAINABILITY = "explainability"
INTERPRETABILITY = "interpretability"
ACCURACY = "accuracy"
CORRELATED_TOLERANCE = "correlated-attributes-tolerance"
IMBALANCE_TOLERANCE = "data-imbalance-tolerance"
TRAINING_COMPLEXITY = "training-complexity"
CONVERGENCE_VOLUME = "convergence-volume"
MISSING_TOLERANCE = "missing-values-tolerance"
INCREMENTALITY = "incrementality"
NOISE_TOLERANCE = "noise-tolerance"
BIASED_TOLERANCE = "biased-distribution-tolerance"
DECISION_COMPLEXITY = "decision-complexity"
MEMORY_REQUIREMENTS = "memory-requirements"
PARALLELISM_POTENTIAL = "parallelism-potential"
ATTRIBUTE_TYPES = "attribute-types"
EVOLUTIVITY = "evolutivity"

#: Criteria every family profile must carry a value for: the four
#: headline criteria plus everything the requirement mapping targets.
REQUIRED_CRITERIA = (
    TRAINING_TYPE,
    EXPLAINABILITY,
    INTERPRETABILITY,
    ACCURACY,
    INCREMENTALITY,
    EVOLUTIVITY,
    TRAINING_COMPLEXITY,
    MEMORY_REQUIREMENTS,
    PARALLELISM_POTENTIAL,
    DECISION_COMPLEXITY,
    CONVERGENCE_VOLUME,
    MISSING_TOLERANCE,
    ATTRIBUTE_TYPES,
    IMBALANCE_TOLERANCE,
    NOISE_TOLERANCE,
    BIASED_TOLERANCE,
)


# ---------------------------------------------------------------------------
# Load / validate / serialize
# ---------------------------------------------------------------------------

def _as_value_tuple(raw, where: str) -> tuple[str, ...]:
    if isinstance(raw, str):
        return (raw,)
    if isinstance(raw, (list, tuple)) and raw:
        if len(set(raw)) != len(raw):
            raise CatalogError(f"{where}: duplicate values in {raw!r}")
        return tuple(str(v) for v in raw)
    raise CatalogError(f"{where}: expected a value or non-empty list, got {raw!r}")


def load_catalog(source) -> Catalog:
    """Parse the YAML catalog format and validate it.

    ``source`` may be a byte/text stream, bytes, or a string. Raises
    CatalogError with a location for any parse or validation problem.
    """
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    elif isinstance(source, io.IOBase) or hasattr(source, "read"):
        source = source.read()
        if isinstance(source, bytes):
            source = source.decode("utf-8")
    try:
        doc = yaml.safe_load(source)
    except yaml.YAMLError as exc:
        raise CatalogError(f"catalog parse failure: {exc}") from exc
    if not isinstance(doc, dict):
        raise CatalogError("catalog root must be a mapping")
    if "schemaVersion" not in doc:
        raise CatalogError("catalog: missing schemaVersion")

    criteria = []
    for i, raw in enumerate(doc.get("criteria") or []):
        where = f"criteria[{i}]"
        try:
            criteria.append(
                SelectionCriterion(
                    id=str(raw["id"]),
                    name=str(raw.get("name", raw["id"])),
                    grade=str(raw["grade"]),
                    range_kind=str(raw["rangeKind"]),
                    allowed_values=tuple(str(v) for v in raw["values"]),
                )
            )
        except (KeyError, TypeError) as exc:
            raise CatalogError(f"{where}: malformed criterion ({exc})") from exc
        if criteria[-1].grade not in GRADE_WEIGHTS:
            raise CatalogError(f"{where}: unknown grade {criteria[-1].grade!r}")
        if criteria[-1].range_kind not in RANGE_KINDS:
            raise CatalogError(f"{where}: unknown rangeKind {criteria[-1].range_kind!r}")

    families = []
    for i, raw in enumerate(doc.get("families") or []):
        where = f"families[{i}]"
        try:
            values = {
                str(cid): _as_value_tuple(v, f"{where}.values.{cid}")
                for cid, v in (raw.get("values") or {}).items()
            }
            families.append(
                AlgorithmFamilyProfile(
                    id=str(raw["id"]),
                    name=str(raw.get("name", raw["id"])),
                    description=str(raw.get("description", "")),
                    criterion_values=values,
                )
            )
        except (KeyError, TypeError) as exc:
            raise CatalogError(f"{where}: malformed family ({exc})") from exc

    catalog = Catalog(
        schema_version=int(doc["schemaVersion"]),
        criteria=tuple(criteria),
        families=tuple(families),
    )
    violations = validate_catalog(catalog)
    if violations:
        raise CatalogError("invalid catalog: " + "; ".join(violations))
    return catalog


def validate_catalog(catalog: Catalog) -> list[str]:
    """Return the list of invariant violations; empty means valid."""
    violations: list[str] = []

    seen = set()
    for c in catalog.criteria:
        if c.id in seen:
            violations.append(f"duplicate criterion id {c.id!r}")
        seen.add(c.id)
    criteria_by_id = {c.id: c for c in catalog.criteria}

    seen = set()
    for f in catalog.families:
        if f.id in seen:
            violations.append(f"duplicate family id {f.id!r}")
        seen.add(f.id)
        for cid, values in f.criterion_values.items():
            criterion = criteria_by_id.get(cid)
            if criterion is None:
                violations.append(f"family {f.id!r}: unknown criterion id {cid!r}")
                continue
            for v in values:
                if v not in criterion.allowed_values:
                    violations.append(
                        f"family {f.id!r}, criterion {cid!r}: "
                        f"value {v!r} outside range {list(criterion.allowed_values)}"
                    )
        for cid in REQUIRED_CRITERIA:
            if cid in criteria_by_id and cid not in f.criterion_values:
                violations.append(f"family {f.id!r}: missing value for criterion {cid!r}")

    return violations


def serialize_catalog(catalog: Catalog) -> str:
    doc = {
        "schemaVersion": catalog.schema_version,
        "criteria": [
            {
                "id": c.id,
                "name": c.name,
                "grade": c.grade,
                "rangeKind": c.range_kind,
                "values": list(c.allowed_values),
            }
            for c in catalog.criteria
        ],
        "families": [
            {
                "id": f.id,
                "name": f.name,
                "description": f.description,
                "values": {cid: list(vals) for cid, vals in f.criterion_values.items()},
            }
            for f in catalog.families
        ],
    }
    return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True)


def seed_catalog_path() -> str:
    from importlib.resources import files

    return str(files("mlworkbench").joinpath("data/seed_catalog.yaml"))


def load_seed_catalog() -> Catalog:
    with open(seed_catalog_path(), "rb") as fh:
        return load_catalog(fh)
