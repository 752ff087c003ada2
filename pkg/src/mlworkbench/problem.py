"""ML project capture: domain requirements, data properties, and the
mapping from domain requirements to algorithm-family criteria.

Projects are immutable values; every mutation returns a new project.
"""

from __future__ import annotations

import io
import uuid
from dataclasses import dataclass, field, replace
from typing import Optional, Union

import yaml

from . import catalog as cat

PROJECT_SCHEMA_VERSION = 1


class ProblemError(Exception):
    """Raised for out-of-range requirement values or malformed project files."""


# ---------------------------------------------------------------------------
# Care levels
# ---------------------------------------------------------------------------

CARE_LEVELS = ("Not", "Could", "Should", "Must")

CARE_NUMERIC = {
    "Not": 0.0,
    "Could": 1.0 / 3.0,
    "Should": 2.0 / 3.0,
    "Must": 1.0,
}


def care_numeric(label: str) -> float:
    try:
        return CARE_NUMERIC[label]
    except KeyError:
        raise ProblemError(f"unknown care level {label!r}") from None


# ---------------------------------------------------------------------------
# Requirement vocabulary
# ---------------------------------------------------------------------------

# Domain (expert) requirement types.
R_ACCURACY = "accuracy"
R_EXPLAINABILITY = "explainability"
R_INTERPRETABILITY = "interpretability"
R_ADAPTABILITY = "adaptability"
R_COST_CPU = "cost-cpu"
R_COST_DATA = "cost-data"
R_DECISION_SPEED = "decision-speed"

DOMAIN_REQUIREMENT_TYPES = (
    R_ACCURACY,
    R_EXPLAINABILITY,
    R_INTERPRETABILITY,
    R_ADAPTABILITY,
    R_COST_CPU,
    R_COST_DATA,
    R_DECISION_SPEED,
)

# Data property types. Their care is implicitly Must: known data
# characteristics are facts.
P_LABELING = "labeling"
P_VOLUME = "volume"
P_MISSING = "missing-values"
P_DATA_TYPE = "data-type"
P_SEASONALITY = "seasonality"
P_REPRESENTATIVITY = "representativity"
P_HOMOGENEITY = "homogeneity"
P_DISTRIBUTION = "distribution"

DATA_PROPERTY_TYPES = (
    P_LABELING,
    P_VOLUME,
    P_MISSING,
    P_DATA_TYPE,
    P_SEASONALITY,
    P_REPRESENTATIVITY,
    P_HOMOGENEITY,
    P_DISTRIBUTION,
)

LABELING_VALUES = ("Labeled", "Unlabeled", "ToBeLabeled")
VOLUME_BUCKETS = ("Low", "Medium", "High")
MISSING_LEVELS = ("None", "Low", "Medium", "High")
DATA_TYPE_VALUES = ("Categorical", "Numerical", "Textual")
REPRESENTATIVITY_VALUES = ("Low", "Medium", "High")
DISTRIBUTION_VALUES = ("Normal", "Unknown")
COST_BUDGET_VALUES = ("Low", "Medium", "High", "Very High")
SPEED_METRICS = ("max", "avg", "p95")

PROVENANCE_EXPERT = "expert"
PROVENANCE_PROFILED = "profiled"


@dataclass(frozen=True)
class DecisionSpeed:
    """Response-time budget: named metric plus a duration in milliseconds."""

    metric: str
    milliseconds: float


@dataclass(frozen=True)
class HomogeneityChecks:
    """The two homogeneity checks; None means the check was not performed."""

    class_balance_ok: Optional[bool]
    scales_ok: Optional[bool]


@dataclass(frozen=True)
class DomainRequirementValue:
    requirement_type: str
    value: object
    care: str

    def __post_init__(self):
        _validate_domain_requirement(self.requirement_type, self.value, self.care)


@dataclass(frozen=True)
class DataPropertyValue:
    property_type: str
    value: object
    provenance: str = PROVENANCE_EXPERT

    def __post_init__(self):
        _validate_data_property(self.property_type, self.value, self.provenance)


def _validate_domain_requirement(rtype: str, value, care: str) -> None:
    if rtype not in DOMAIN_REQUIREMENT_TYPES:
        raise ProblemError(f"unknown domain requirement type {rtype!r}")
    if care not in CARE_LEVELS:
        raise ProblemError(f"{rtype}: unknown care level {care!r}")
    if rtype == R_ACCURACY:
        if not isinstance(value, (int, float)) or not (0.0 < float(value) <= 1.0):
            raise ProblemError(f"accuracy: value {value!r} must be a percentage in (0, 1]")
    elif rtype in (R_EXPLAINABILITY, R_INTERPRETABILITY, R_ADAPTABILITY):
        if not isinstance(value, bool):
            raise ProblemError(f"{rtype}: value {value!r} must be a boolean")
    elif rtype in (R_COST_CPU, R_COST_DATA):
        if value not in COST_BUDGET_VALUES:
            raise ProblemError(
                f"{rtype}: value {value!r} not in {list(COST_BUDGET_VALUES)}"
            )
    elif rtype == R_DECISION_SPEED:
        if not isinstance(value, DecisionSpeed):
            raise ProblemError(f"decision-speed: value must be a DecisionSpeed pair")
        if value.metric not in SPEED_METRICS:
            raise ProblemError(f"decision-speed: unknown metric {value.metric!r}")
        if value.milliseconds <= 0:
            raise ProblemError("decision-speed: duration must be positive")


def _validate_data_property(ptype: str, value, provenance: str) -> None:
    if ptype not in DATA_PROPERTY_TYPES:
        raise ProblemError(f"unknown data property type {ptype!r}")
    if provenance not in (PROVENANCE_EXPERT, PROVENANCE_PROFILED):
        raise ProblemError(f"{ptype}: unknown provenance {provenance!r}")
    ranges = {
        P_LABELING: LABELING_VALUES,
        P_VOLUME: VOLUME_BUCKETS,
        P_MISSING: MISSING_LEVELS,
        P_REPRESENTATIVITY: REPRESENTATIVITY_VALUES,
        P_DISTRIBUTION: DISTRIBUTION_VALUES,
    }
    if ptype in ranges:
        if value not in ranges[ptype]:
            raise ProblemError(f"{ptype}: value {value!r} not in {list(ranges[ptype])}")
    elif ptype == P_DATA_TYPE:
        if (
            not isinstance(value, (frozenset, set, tuple, list))
            or not value
            or not set(value) <= set(DATA_TYPE_VALUES)
        ):
            raise ProblemError(
                f"data-type: value {value!r} must be a non-empty subset of {list(DATA_TYPE_VALUES)}"
            )
    elif ptype == P_SEASONALITY:
        if not isinstance(value, bool):
            raise ProblemError(f"seasonality: value {value!r} must be a boolean")
    elif ptype == P_HOMOGENEITY:
        if not isinstance(value, HomogeneityChecks):
            raise ProblemError("homogeneity: value must be a HomogeneityChecks pair")


# ---------------------------------------------------------------------------
# MLProblem
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MLProblem:
    id: str
    description: str = ""
    domain_requirements: tuple[DomainRequirementValue, ...] = ()
    data_properties: tuple[DataPropertyValue, ...] = ()
    dataset_ref: Optional[str] = None

    def domain_requirement(self, rtype: str) -> Optional[DomainRequirementValue]:
        for r in self.domain_requirements:
            if r.requirement_type == rtype:
                return r
        return None

    def data_property(self, ptype: str) -> Optional[DataPropertyValue]:
        for p in self.data_properties:
            if p.property_type == ptype:
                return p
        return None


def new_project(description: str = "") -> MLProblem:
    return MLProblem(id=str(uuid.uuid4()), description=description)


def set_requirement(
    project: MLProblem, r: Union[DomainRequirementValue, DataPropertyValue]
) -> MLProblem:
    """Return a project where ``r`` replaces any prior value of the same type."""
    if isinstance(r, DomainRequirementValue):
        kept = tuple(
            x for x in project.domain_requirements if x.requirement_type != r.requirement_type
        )
        return replace(project, domain_requirements=kept + (r,))
    if isinstance(r, DataPropertyValue):
        kept = tuple(
            x for x in project.data_properties if x.property_type != r.property_type
        )
        return replace(project, data_properties=kept + (r,))
    raise ProblemError(f"not a requirement value: {r!r}")


def merge_profile(project: MLProblem, report) -> MLProblem:
    """Fill data properties from a ProfileReport.

    Only properties that are absent or were themselves profiled get
    (re)filled; expert-provided values always win.
    """
    for prop in report.as_data_properties():
        existing = project.data_property(prop.property_type)
        if existing is not None and existing.provenance == PROVENANCE_EXPERT:
            continue
        project = set_requirement(project, prop)
    return project


# ---------------------------------------------------------------------------
# Domain-term synonym table (domain need -> computational requirement type)
# ---------------------------------------------------------------------------

DOMAIN_TERM_SYNONYMS = {
    "auditability": R_EXPLAINABILITY,
    "transparency": R_EXPLAINABILITY,
    "explainability": R_EXPLAINABILITY,
    "accountability": R_EXPLAINABILITY,
    "interpretability": R_INTERPRETABILITY,
    "understandability": R_INTERPRETABILITY,
    "accuracy": R_ACCURACY,
    "precision": R_ACCURACY,
    "correctness": R_ACCURACY,
    "speed": R_DECISION_SPEED,
    "latency": R_DECISION_SPEED,
    "responsiveness": R_DECISION_SPEED,
    "response time": R_DECISION_SPEED,
    "adaptability": R_ADAPTABILITY,
    "evolvability": R_ADAPTABILITY,
    "compute budget": R_COST_CPU,
    "training cost": R_COST_CPU,
    "data acquisition cost": R_COST_DATA,
}


def derive_computational_requirement(domain_term: str) -> Optional[str]:
    """Translate a domain-level need into a requirement type.

    Returns None for unknown terms; callers must treat that as "no
    mapping", never as a guess.
    """
    return DOMAIN_TERM_SYNONYMS.get(domain_term.strip().lower())


# ---------------------------------------------------------------------------
# Requirement -> criterion mapping, with outer weight grades
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MappingEntry:
    criterion_id: str
    grade: str


#: Requirement type -> targeted criteria with their grades. Explainability
#: mirrors interpretability (both are grade-A headline requirements).
REQUIREMENT_MAPPING: dict[str, tuple[MappingEntry, ...]] = {
    R_ACCURACY: (MappingEntry(cat.ACCURACY, "B"),),
    R_EXPLAINABILITY: (MappingEntry(cat.EXPLAINABILITY, "A"),),
    R_INTERPRETABILITY: (MappingEntry(cat.INTERPRETABILITY, "A-B"),),
    R_ADAPTABILITY: (
        MappingEntry(cat.INCREMENTALITY, "C"),
        MappingEntry(cat.EVOLUTIVITY, "D"),
    ),
    R_COST_CPU: (
        MappingEntry(cat.TRAINING_COMPLEXITY, "B"),
        MappingEntry(cat.MEMORY_REQUIREMENTS, "C"),
        MappingEntry(cat.PARALLELISM_POTENTIAL, "C"),
    ),
    R_COST_DATA: (MappingEntry(cat.MEMORY_REQUIREMENTS, "C"),),
    R_DECISION_SPEED: (MappingEntry(cat.DECISION_COMPLEXITY, "C"),),
    P_LABELING: (MappingEntry(cat.TRAINING_TYPE, "A"),),
    P_VOLUME: (MappingEntry(cat.CONVERGENCE_VOLUME, "B"),),
    P_MISSING: (MappingEntry(cat.MISSING_TOLERANCE, "B-C"),),
    P_DATA_TYPE: (MappingEntry(cat.ATTRIBUTE_TYPES, "D"),),
    P_SEASONALITY: (MappingEntry(cat.EVOLUTIVITY, "D"),),
    P_REPRESENTATIVITY: (MappingEntry(cat.IMBALANCE_TOLERANCE, "B"),),
    P_HOMOGENEITY: (MappingEntry(cat.NOISE_TOLERANCE, "C"),),
    P_DISTRIBUTION: (MappingEntry(cat.BIASED_TOLERANCE, "C"),),
}


def mapped_criteria(requirement_type: str) -> tuple[MappingEntry, ...]:
    try:
        return REQUIREMENT_MAPPING[requirement_type]
    except KeyError:
        raise ProblemError(f"no criterion mapping for {requirement_type!r}") from None


def outer_grade(requirement_type: str) -> str:
    """Outer weight grade: the strictest grade among the mapped criteria."""
    entries = mapped_criteria(requirement_type)
    return min(entries, key=lambda e: cat.GRADES.index(e.grade)).grade


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _requirement_to_doc(r: DomainRequirementValue) -> dict:
    value = r.value
    if isinstance(value, DecisionSpeed):
        value = {"metric": value.metric, "milliseconds": value.milliseconds}
    return {"type": r.requirement_type, "value": value, "care": r.care}


def _property_to_doc(p: DataPropertyValue) -> dict:
    value = p.value
    if isinstance(value, HomogeneityChecks):
        value = {"classBalanceOk": value.class_balance_ok, "scalesOk": value.scales_ok}
    elif isinstance(value, (frozenset, set, tuple)):
        value = sorted(value)
    return {"type": p.property_type, "value": value, "provenance": p.provenance}


def serialize_project(project: MLProblem) -> str:
    doc = {
        "schemaVersion": PROJECT_SCHEMA_VERSION,
        "id": project.id,
        "description": project.description,
        "domainRequirements": [_requirement_to_doc(r) for r in project.domain_requirements],
        "dataProperties": [_property_to_doc(p) for p in project.data_properties],
    }
    if project.dataset_ref is not None:
        doc["datasetRef"] = project.dataset_ref
    return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True)


def requirement_from_doc(raw: dict) -> DomainRequirementValue:
    rtype = raw.get("type")
    value = raw.get("value")
    if rtype == R_DECISION_SPEED and isinstance(value, dict):
        value = DecisionSpeed(
            metric=value.get("metric", "max"),
            milliseconds=float(value.get("milliseconds", 0)),
        )
    return DomainRequirementValue(
        requirement_type=rtype, value=value, care=raw.get("care", "Must")
    )


def property_from_doc(raw: dict) -> DataPropertyValue:
    ptype = raw.get("type")
    value = raw.get("value")
    if ptype == P_HOMOGENEITY and isinstance(value, dict):
        value = HomogeneityChecks(
            class_balance_ok=value.get("classBalanceOk"),
            scales_ok=value.get("scalesOk"),
        )
    elif ptype == P_DATA_TYPE and isinstance(value, list):
        value = frozenset(value)
    return DataPropertyValue(
        property_type=ptype,
        value=value,
        provenance=raw.get("provenance", PROVENANCE_EXPERT),
    )


# ---------------------------------------------------------------------------
# What-if overrides (dotted paths: care.<type> / value.<type>)
# ---------------------------------------------------------------------------

def _parse_override_value(rtype: str, raw: str):
    if rtype == R_ACCURACY:
        return float(raw)
    if rtype in (R_EXPLAINABILITY, R_INTERPRETABILITY, R_ADAPTABILITY):
        if raw.lower() in ("true", "yes", "1"):
            return True
        if raw.lower() in ("false", "no", "0"):
            return False
        raise ProblemError(f"{rtype}: expected a boolean, got {raw!r}")
    if rtype == R_DECISION_SPEED:
        metric, _, ms = raw.partition(":")
        if not ms:
            metric, ms = "max", metric
        return DecisionSpeed(metric=metric, milliseconds=float(ms))
    return raw


def apply_override(project: MLProblem, path: str, raw_value: str) -> MLProblem:
    """Apply one what-if override without touching the stored project.

    ``care.<type>`` changes a requirement's care level; ``value.<type>``
    changes its value (domain requirement or expert data property).
    """
    kind, _, rtype = path.partition(".")
    if not rtype or kind not in ("care", "value"):
        raise ProblemError(f"override path must be care.<type> or value.<type>, got {path!r}")
    if kind == "care":
        if rtype not in DOMAIN_REQUIREMENT_TYPES:
            raise ProblemError(f"unknown requirement type in override {path!r}")
        existing = project.domain_requirement(rtype)
        if existing is None:
            # Caring about an absent requirement implies its positive default.
            defaults = {
                R_EXPLAINABILITY: True,
                R_INTERPRETABILITY: True,
                R_ADAPTABILITY: True,
            }
            if rtype not in defaults:
                raise ProblemError(f"cannot set care for absent requirement {rtype!r}")
            existing = DomainRequirementValue(rtype, defaults[rtype], "Not")
        return set_requirement(
            project, DomainRequirementValue(rtype, existing.value, raw_value)
        )
    if rtype in DOMAIN_REQUIREMENT_TYPES:
        existing = project.domain_requirement(rtype)
        care = existing.care if existing else "Must"
        value = _parse_override_value(rtype, raw_value)
        return set_requirement(project, DomainRequirementValue(rtype, value, care))
    if rtype in DATA_PROPERTY_TYPES:
        value: object = raw_value
        if rtype == P_SEASONALITY:
            value = raw_value.lower() in ("true", "yes", "1")
        elif rtype == P_DATA_TYPE:
            value = frozenset(v.strip() for v in raw_value.split(",") if v.strip())
        return set_requirement(project, DataPropertyValue(rtype, value, PROVENANCE_EXPERT))
    raise ProblemError(f"unknown requirement type in override {path!r}")


def deserialize_project(source) -> MLProblem:
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    elif hasattr(source, "read"):
        source = source.read()
        if isinstance(source, bytes):
            source = source.decode("utf-8")
    try:
        doc = yaml.safe_load(source)
    except yaml.YAMLError as exc:
        raise ProblemError(f"project parse failure: {exc}") from exc
    if not isinstance(doc, dict):
        raise ProblemError("project root must be a mapping")
    if "schemaVersion" not in doc:
        raise ProblemError("project: missing schemaVersion")
    if int(doc["schemaVersion"]) > PROJECT_SCHEMA_VERSION:
        raise ProblemError(
            f"project schemaVersion {doc['schemaVersion']} is newer than supported "
            f"({PROJECT_SCHEMA_VERSION})"
        )

    requirements = []
    for i, raw in enumerate(doc.get("domainRequirements") or []):
        try:
            requirements.append(requirement_from_doc(raw))
        except ProblemError as exc:
            raise ProblemError(f"domainRequirements[{i}]: {exc}") from exc
    properties = []
    for i, raw in enumerate(doc.get("dataProperties") or []):
        try:
            properties.append(property_from_doc(raw))
        except ProblemError as exc:
            raise ProblemError(f"dataProperties[{i}]: {exc}") from exc

    for items, key in ((requirements, "requirement_type"), (properties, "property_type")):
        seen = set()
        for item in items:
            t = getattr(item, key)
            if t in seen:
                raise ProblemError(f"duplicate {key.replace('_', ' ')} {t!r}")
            seen.add(t)

    return MLProblem(
        id=str(doc.get("id") or uuid.uuid4()),
        description=str(doc.get("description") or ""),
        domain_requirements=tuple(requirements),
        data_properties=tuple(properties),
        dataset_ref=doc.get("datasetRef"),
    )
