"""Processing-chain templating and compensation-step injection.

A chain starts from the generic solution template and gains preprocessing
steps wherever a remediable (grade B-D) criterion shortfall meets a data
condition that makes it matter. Grade-A shortfalls are never compensated;
they simply sink the family's score.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import yaml

from . import catalog as cat
from .profiler import ProfileReport

CHAIN_SCHEMA_VERSION = 1

STEP_KINDS = (
    "data-retrieval",
    "cleaning",
    "imputation",
    "encoding",
    "denoising",
    "normalization",
    "dimensionality-reduction",
    "model-training",
    "evaluation",
    "interpretation",
)

#: Fixed relative order for injected preprocessing steps (data-flow order).
INJECTION_ORDER = (
    "imputation",
    "encoding",
    "denoising",
    "normalization",
    "dimensionality-reduction",
)


class PipelineError(Exception):
    pass


@dataclass(frozen=True)
class PipelineStep:
    kind: str
    rationale: str = ""
    bound_family_id: Optional[str] = None  # model-training only
    candidate_tags: tuple[str, ...] = ()


@dataclass(frozen=True)
class ProcessingChain:
    steps: tuple[PipelineStep, ...]
    problem_id: str = ""
    family_id: str = ""
    # The iterative improvement loop is recorded as intent, not executed.
    exit_criterion: str = ""

    def kinds(self) -> tuple[str, ...]:
        return tuple(s.kind for s in self.steps)

    def training_index(self) -> int:
        return self.kinds().index("model-training")


def base_template(problem_kind: str = "") -> ProcessingChain:
    """The generic five-step solution template around model training."""
    hint = f" for {problem_kind}" if problem_kind else ""
    return ProcessingChain(
        steps=(
            PipelineStep("data-retrieval", f"ingest the training data{hint}"),
            PipelineStep("cleaning", "drop malformed records, normalize tokens"),
            PipelineStep("model-training", "train the selected algorithm family"),
            PipelineStep("evaluation", "measure against the exit criterion"),
            PipelineStep("interpretation", "translate results for domain users"),
        )
    )


# ---------------------------------------------------------------------------
# Compensation rules
# ---------------------------------------------------------------------------

_W = {"None": 1, "Low": 2, "Medium": 3, "High": 4}
_T = {"Low": 1, "Medium": 2, "High": 3}


@dataclass(frozen=True)
class CompensationRule:
    criterion_id: str
    step_kind: str
    # family values x profile -> (fires, data-condition text); rule fires only
    # when the family falls short AND the data makes the shortfall matter.
    trigger: Callable[[tuple[str, ...], ProfileReport], tuple[bool, str]]
    rationale_template: str


def _missing_trigger(values, report):
    if report.missing_level == "None":
        return False, ""
    tolerance = max(_W[v] for v in values)
    return tolerance < _W[report.missing_level], f"missing level {report.missing_level}"


def _datatype_trigger(values, report):
    unsupported = sorted(report.data_types - set(values))
    return bool(unsupported), f"unsupported attribute types: {', '.join(unsupported)}"


def _scales_trigger(values, report):
    return report.scales_similar is False, "attribute scales differ widely"


def _correlation_trigger(values, report):
    if not report.correlated_pairs:
        return False, ""
    tolerance = max(_W[v] for v in values)
    pairs = ", ".join(f"{a}~{b}" for a, b, _ in report.correlated_pairs)
    return tolerance <= _W["Low"], f"correlated attributes ({pairs})"


def _noise_trigger(values, report):
    failed = sum(
        1
        for ok in (report.class_balance_ok, report.scales_similar)
        if ok is False
    )
    if failed == 0:
        return False, ""
    tolerance = max(_T[v] for v in values)
    return tolerance <= _T["Low"], f"{failed} homogeneity check(s) failed"


#: The shipped rule set. Only remediable (B-D) criteria appear here.
COMPENSATION_RULES = (
    CompensationRule(
        cat.MISSING_TOLERANCE,
        "imputation",
        _missing_trigger,
        "family tolerates less missing data than observed ({condition}); impute before training",
    ),
    CompensationRule(
        cat.ATTRIBUTE_TYPES,
        "encoding",
        _datatype_trigger,
        "family does not take all present attribute types ({condition}); encode them",
    ),
    CompensationRule(
        cat.NOISE_TOLERANCE,
        "normalization",
        _scales_trigger,
        "{condition}; normalize attributes to comparable scales",
    ),
    CompensationRule(
        cat.CORRELATED_TOLERANCE,
        "dimensionality-reduction",
        _correlation_trigger,
        "family has little tolerance to correlated attributes and {condition}; add PCA",
    ),
    CompensationRule(
        cat.NOISE_TOLERANCE,
        "denoising",
        _noise_trigger,
        "family has low noise tolerance and {condition}; denoise before training",
    ),
)


def apply_compensations(
    chain: ProcessingChain,
    family: cat.AlgorithmFamilyProfile,
    breakdown=None,
    profile: Optional[ProfileReport] = None,
    rules: tuple[CompensationRule, ...] = COMPENSATION_RULES,
) -> ProcessingChain:
    """Inject one step per firing rule before model training; idempotent."""
    chain = replace(chain, family_id=family.id)
    training = replace(
        chain.steps[chain.training_index()], bound_family_id=family.id
    )
    steps = list(chain.steps)
    steps[chain.training_index()] = training
    chain = replace(chain, steps=tuple(steps))
    if profile is None:
        return chain

    grade_index = {g: i for i, g in enumerate(cat.GRADES)}
    existing_kinds = set(chain.kinds())
    injected: dict[str, PipelineStep] = {}
    for rule in rules:
        values = family.criterion_values.get(rule.criterion_id)
        if values is None:
            continue
        fires, condition = rule.trigger(values, profile)
        if not fires or rule.step_kind in existing_kinds or rule.step_kind in injected:
            continue
        injected[rule.step_kind] = PipelineStep(
            kind=rule.step_kind,
            rationale=rule.rationale_template.format(condition=condition)
            + f" [criterion: {rule.criterion_id}]",
        )
    if not injected:
        return chain
    ordered = [injected[k] for k in INJECTION_ORDER if k in injected]
    idx = chain.training_index()
    steps = list(chain.steps)
    steps[idx:idx] = ordered
    return replace(chain, steps=tuple(steps))


def rule_grades(catalog: cat.Catalog, rules=COMPENSATION_RULES) -> dict[str, str]:
    """Grade of each rule's trigger criterion, for the no-grade-A check."""
    return {r.criterion_id: catalog.criterion(r.criterion_id).grade for r in rules}


# ---------------------------------------------------------------------------
# Export / import
# ---------------------------------------------------------------------------

def export_chain(chain: ProcessingChain, fmt: str = "canonical") -> bytes:
    if fmt == "canonical":
        return _to_canonical(chain).encode("utf-8")
    if fmt == "workflow-xml":
        return _to_bpmn(chain)
    raise PipelineError(f"unknown export format {fmt!r}")


def _to_canonical(chain: ProcessingChain) -> str:
    doc = {
        "schemaVersion": CHAIN_SCHEMA_VERSION,
        "problemId": chain.problem_id,
        "familyId": chain.family_id,
        "exitCriterion": chain.exit_criterion,
        "steps": [
            {
                "kind": s.kind,
                "rationale": s.rationale,
                **({"boundFamilyId": s.bound_family_id} if s.bound_family_id else {}),
                **({"candidateTags": list(s.candidate_tags)} if s.candidate_tags else {}),
            }
            for s in chain.steps
        ],
    }
    return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True)


def import_chain(source) -> ProcessingChain:
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = yaml.safe_load(source)
    except yaml.YAMLError as exc:
        raise PipelineError(f"chain parse failure: {exc}") from exc
    if not isinstance(doc, dict) or "steps" not in doc:
        raise PipelineError("chain document must carry a steps list")
    steps = tuple(
        PipelineStep(
            kind=s["kind"],
            rationale=s.get("rationale", ""),
            bound_family_id=s.get("boundFamilyId"),
            candidate_tags=tuple(s.get("candidateTags", ())),
        )
        for s in doc["steps"]
    )
    return ProcessingChain(
        steps=steps,
        problem_id=doc.get("problemId", ""),
        family_id=doc.get("familyId", ""),
        exit_criterion=doc.get("exitCriterion", ""),
    )


_BPMN_NS = "http://www.omg.org/spec/BPMN/20100524/MODEL"


def _to_bpmn(chain: ProcessingChain) -> bytes:
    """BPMN 2.0 process: one service task per step, linked start to end."""
    ET.register_namespace("bpmn", _BPMN_NS)
    definitions = ET.Element(
        f"{{{_BPMN_NS}}}definitions",
        {"id": "mlworkbench-chain", "targetNamespace": "urn:mlworkbench:chain"},
    )
    process = ET.SubElement(
        definitions,
        f"{{{_BPMN_NS}}}process",
        {"id": f"chain-{chain.family_id or 'unbound'}", "isExecutable": "false"},
    )
    ET.SubElement(process, f"{{{_BPMN_NS}}}startEvent", {"id": "start"})
    node_ids = ["start"]
    for i, step in enumerate(chain.steps):
        task_id = f"task-{i + 1}-{step.kind}"
        task = ET.SubElement(
            process,
            f"{{{_BPMN_NS}}}serviceTask",
            {"id": task_id, "name": step.kind},
        )
        if step.rationale:
            doc = ET.SubElement(task, f"{{{_BPMN_NS}}}documentation")
            doc.text = step.rationale
        node_ids.append(task_id)
    ET.SubElement(process, f"{{{_BPMN_NS}}}endEvent", {"id": "end"})
    node_ids.append("end")
    for i in range(len(node_ids) - 1):
        ET.SubElement(
            process,
            f"{{{_BPMN_NS}}}sequenceFlow",
            {
                "id": f"flow-{i + 1}",
                "sourceRef": node_ids[i],
                "targetRef": node_ids[i + 1],
            },
        )
    return ET.tostring(definitions, encoding="utf-8", xml_declaration=True)
