"""Satisfaction functions and the normalized Solves aggregation.

Every function here is pure and returns values in [0, 1]. The per-entry
weight is careNumeric x outer grade weight; Solves is the weight-normalized
average, so uniformly rescaling the grade weights changes nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import problem as prob
from .catalog import (
    ACCURACY,
    ACCURACY_BUCKETS,
    ATTRIBUTE_TYPES,
    BIASED_TOLERANCE,
    CANONICAL,
    CONVERGENCE_VOLUME,
    DECISION_COMPLEXITY,
    EVOLUTIVITY,
    EXPLAINABILITY,
    GRADE_WEIGHTS,
    IMBALANCE_TOLERANCE,
    INCREMENTALITY,
    INTERPRETABILITY,
    MEMORY_REQUIREMENTS,
    MISSING_TOLERANCE,
    NOISE_TOLERANCE,
    PARALLELISM_POTENTIAL,
    TRAINING_COMPLEXITY,
    TRAINING_TYPE,
    AlgorithmFamilyProfile,
    Catalog,
    MissingCriterionValue,
)


class EngineError(Exception):
    pass


class UnscorableProblem(EngineError):
    """The problem carries no requirement with a positive effective weight."""


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EngineConfig:
    grade_weights: dict[str, float] = field(default_factory=lambda: dict(GRADE_WEIGHTS))
    care_numerics: dict[str, float] = field(default_factory=lambda: dict(prob.CARE_NUMERIC))
    # Decision-speed budget -> linguistic bucket (upper bounds, ms).
    speed_thresholds: tuple[tuple[float, str], ...] = (
        (10.0, "Low"),
        (100.0, "Medium"),
        (1000.0, "High"),
    )
    speed_overflow_bucket: str = "Very High"
    tie_break: str = "family-id"

    def grade_weight(self, grade: str) -> float:
        return self.grade_weights[grade]


DEFAULT_CONFIG = EngineConfig()


# ---------------------------------------------------------------------------
# Fuzzy comparison primitives
# ---------------------------------------------------------------------------

def fuzzy_leq_ranks(r1: int, r2: int) -> float:
    """Graded 'r1 at most r2' on linguistic ranks; 1 when within budget,
    dropping by 1/3 per rank of excess."""
    return max(0.0, min(1.0, 1.0 - (r1 - r2) / 3.0))


def fuzzy_leq(v1: str, v2: str) -> float:
    """Fuzzy comparison of two canonical-scale labels."""
    return fuzzy_leq_ranks(CANONICAL.rank(v1), CANONICAL.rank(v2))


def complement(v: str) -> str:
    """Mirror a canonical-scale value: result rank is 5 minus the input rank."""
    return CANONICAL.labels[4 - CANONICAL.rank(v)]


def _normalized(rank: int, max_rank: int) -> float:
    """Linguistic value position mapped onto [0, 1]: (rank-1)/(max-1)."""
    return (rank - 1) / (max_rank - 1)


# Parallelism labels sit on the canonical scale for Complement purposes:
# None plays Low's role and Partial sits at Medium.
_PARALLELISM_AS_CANONICAL = {"None": "Low", "Partial": "Medium", "High": "High"}

# Three-level tolerance labels embedded at the top of the 4-level scale
# (used where the demand side is expressed with a None floor).
_TOLERANCE_SHIFTED_RANKS = {"Low": 2, "Medium": 3, "High": 4}

_WITH_NONE_RANKS = {"None": 1, "Low": 2, "Medium": 3, "High": 4}
_THREE_LEVEL_RANKS = {"Low": 1, "Medium": 2, "High": 3}


def _canonical_rank(label: str) -> int:
    return CANONICAL.rank(label)


# ---------------------------------------------------------------------------
# Per-requirement satisfaction functions
# ---------------------------------------------------------------------------
# Multi-valued criterion sets resolve optimistically: the family contains at
# least one member with the most favorable value, so that value is used.

def satisfies_accuracy(af: AlgorithmFamilyProfile, required: float) -> float:
    best = max(ACCURACY_BUCKETS[v] for v in af.values(ACCURACY))
    return min(1.0, best / required)


def satisfies_flag(af: AlgorithmFamilyProfile, criterion_id: str) -> float:
    positive = {EXPLAINABILITY: "Explainable", INTERPRETABILITY: "Interpretable"}[criterion_id]
    return 1.0 if positive in af.values(criterion_id) else 0.0


def satisfies_adaptability(af: AlgorithmFamilyProfile, config: EngineConfig = DEFAULT_CONFIG) -> float:
    w_c = config.grade_weight("C")
    w_d = config.grade_weight("D")
    incremental = 1.0 if "Yes" in af.values(INCREMENTALITY) else 0.0
    evolutive = max(
        _normalized(_THREE_LEVEL_RANKS[v], 3) for v in af.values(EVOLUTIVITY)
    )
    return (w_c * incremental + w_d * evolutive) / (w_c + w_d)


def satisfies_cost_cpu(
    af: AlgorithmFamilyProfile, budget: str, config: EngineConfig = DEFAULT_CONFIG
) -> float:
    """Blend of training complexity, memory, and mirrored parallelism, each
    fuzzily compared against the single computation budget."""
    w_b = config.grade_weight("B")
    w_c = config.grade_weight("C")
    budget_rank = _canonical_rank(budget)
    training = min(_canonical_rank(v) for v in af.values(TRAINING_COMPLEXITY))
    memory = min(_canonical_rank(v) for v in af.values(MEMORY_REQUIREMENTS))
    # High parallelism mirrors to a low effective cost, so pick the most
    # parallel member value.
    parallelism = max(
        _canonical_rank(_PARALLELISM_AS_CANONICAL.get(v, v))
        for v in af.values(PARALLELISM_POTENTIAL)
    )
    mirrored = _canonical_rank(complement(CANONICAL.labels[parallelism - 1]))
    return (
        w_b * fuzzy_leq_ranks(training, budget_rank)
        + w_c * fuzzy_leq_ranks(memory, budget_rank)
        + w_c * fuzzy_leq_ranks(mirrored, budget_rank)
    ) / (w_b + 2 * w_c)


def satisfies_cost_memory(af: AlgorithmFamilyProfile, budget: str) -> float:
    memory = min(_canonical_rank(v) for v in af.values(MEMORY_REQUIREMENTS))
    return fuzzy_leq_ranks(memory, _canonical_rank(budget))


# Labeling state x family training type -> compatibility. To-be-labeled data
# counts as a remediable path to supervised training; reinforcement families
# are out of scope for tabular problems and match nothing.
_LABELING_COMPAT = {
    ("Labeled", "Supervised"): 1.0,
    ("Unlabeled", "Unsupervised"): 1.0,
    ("ToBeLabeled", "Supervised"): 1.0,
}


def satisfies_labeling(af: AlgorithmFamilyProfile, labeling: str) -> float:
    return max(
        _LABELING_COMPAT.get((labeling, t), 0.0) for t in af.values(TRAINING_TYPE)
    )


def satisfies_volume(af: AlgorithmFamilyProfile, volume_bucket: str) -> float:
    required = min(_THREE_LEVEL_RANKS[v] for v in af.values(CONVERGENCE_VOLUME))
    return fuzzy_leq_ranks(required, _THREE_LEVEL_RANKS[volume_bucket])


def satisfies_missing(af: AlgorithmFamilyProfile, missing_level: str) -> float:
    tolerance = max(_WITH_NONE_RANKS[v] for v in af.values(MISSING_TOLERANCE))
    return fuzzy_leq_ranks(_WITH_NONE_RANKS[missing_level], tolerance)


def satisfies_datatype(af: AlgorithmFamilyProfile, data_types) -> float:
    """Partial credit: fraction of present attribute types the family takes
    natively; full mismatch stays remediable through an encoding step."""
    present = frozenset(data_types)
    supported = frozenset(af.values(ATTRIBUTE_TYPES))
    return len(present & supported) / len(present)


def satisfies_seasonality(af: AlgorithmFamilyProfile) -> float:
    return max(_normalized(_THREE_LEVEL_RANKS[v], 3) for v in af.values(EVOLUTIVITY))


# Representativity demand: High representativity demands little of the
# family, Low demands a lot. Ranks pinned so that the lowest demand is
# always met and the highest fails a None tolerance outright.
_REPRESENTATIVITY_DEMAND_RANK = {"High": 1, "Medium": 3, "Low": 4}


def satisfies_representativity(af: AlgorithmFamilyProfile, representativity: str) -> float:
    demand = _REPRESENTATIVITY_DEMAND_RANK[representativity]
    tolerance = max(_WITH_NONE_RANKS[v] for v in af.values(IMBALANCE_TOLERANCE))
    return fuzzy_leq_ranks(demand, tolerance)


# Inhomogeneity demand by number of failed checks (0/1/2), against the
# noise tolerance embedded at the top of the 4-level scale.
_HOMOGENEITY_DEMAND_RANK = (1, 3, 4)


def satisfies_homogeneity(
    af: AlgorithmFamilyProfile, class_balance_ok, scales_ok
) -> float:
    failed = sum(1 for ok in (class_balance_ok, scales_ok) if ok is False)
    demand = _HOMOGENEITY_DEMAND_RANK[failed]
    tolerance = max(_TOLERANCE_SHIFTED_RANKS[v] for v in af.values(NOISE_TOLERANCE))
    return fuzzy_leq_ranks(demand, tolerance)


def satisfies_distribution(af: AlgorithmFamilyProfile, distribution: str) -> float:
    if distribution == "Normal":
        return 1.0
    return max(
        _normalized(_THREE_LEVEL_RANKS[v], 3) for v in af.values(BIASED_TOLERANCE)
    )


def bucketize_speed(milliseconds: float, config: EngineConfig = DEFAULT_CONFIG) -> str:
    for bound, bucket in config.speed_thresholds:
        if milliseconds <= bound:
            return bucket
    return config.speed_overflow_bucket


def satisfies_decision_speed(
    af: AlgorithmFamilyProfile, budget: prob.DecisionSpeed, config: EngineConfig = DEFAULT_CONFIG
) -> float:
    bucket = bucketize_speed(budget.milliseconds, config)
    complexity = min(_canonical_rank(v) for v in af.values(DECISION_COMPLEXITY))
    return fuzzy_leq_ranks(complexity, _canonical_rank(bucket))


# ---------------------------------------------------------------------------
# Aggregation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SatisfactionEntry:
    requirement_type: str
    satisfaction: float
    weight: float
    mapped_criteria: tuple[str, ...]
    note: str = ""


@dataclass(frozen=True)
class SatisfactionBreakdown:
    family_id: str
    entries: tuple[SatisfactionEntry, ...]
    solves: float

    def entry(self, requirement_type: str):
        for e in self.entries:
            if e.requirement_type == requirement_type:
                return e
        return None


def _domain_entries(af, pb, config):
    """Yield (type, care_numeric, satisfaction, criteria, note) for the
    domain requirements that actually constrain the problem."""
    costs = []  # (care numeric, satisfaction, criteria)
    for r in pb.domain_requirements:
        care = config.care_numerics[r.care]
        if care == 0.0:
            continue
        t = r.requirement_type
        if t == prob.R_ACCURACY:
            s = satisfies_accuracy(af, float(r.value))
            yield t, care, s, (ACCURACY,), f"minimum accuracy {r.value:.0%}"
        elif t == prob.R_EXPLAINABILITY:
            if r.value:
                s = satisfies_flag(af, EXPLAINABILITY)
                yield t, care, s, (EXPLAINABILITY,), "explainability required"
        elif t == prob.R_INTERPRETABILITY:
            if r.value:
                s = satisfies_flag(af, INTERPRETABILITY)
                yield t, care, s, (INTERPRETABILITY,), "interpretability required"
        elif t == prob.R_ADAPTABILITY:
            if r.value:
                s = satisfies_adaptability(af, config)
                yield t, care, s, (INCREMENTALITY, EVOLUTIVITY), "incremental change expected"
        elif t == prob.R_COST_CPU:
            costs.append(
                (
                    care,
                    satisfies_cost_cpu(af, r.value, config),
                    (TRAINING_COMPLEXITY, MEMORY_REQUIREMENTS, PARALLELISM_POTENTIAL),
                    f"computation budget {r.value}",
                )
            )
        elif t == prob.R_COST_DATA:
            costs.append(
                (
                    care,
                    satisfies_cost_memory(af, r.value),
                    (MEMORY_REQUIREMENTS,),
                    f"data budget {r.value}",
                )
            )
        elif t == prob.R_DECISION_SPEED:
            s = satisfies_decision_speed(af, r.value, config)
            bucket = bucketize_speed(r.value.milliseconds, config)
            yield t, care, s, (DECISION_COMPLEXITY,), (
                f"{r.value.metric} response within {r.value.milliseconds:g} ms ({bucket})"
            )
    if costs:
        # One combined cost entry: subfunction scores averaged, cares averaged.
        care = sum(c[0] for c in costs) / len(costs)
        satisfaction = sum(c[1] for c in costs) / len(costs)
        criteria = tuple(dict.fromkeys(cid for c in costs for cid in c[2]))
        note = "; ".join(c[3] for c in costs)
        yield "cost", care, satisfaction, criteria, note


def _data_entries(af, pb, config):
    for p in pb.data_properties:
        t = p.property_type
        # Data characteristics are facts: care is pinned at Must.
        care = 1.0
        if t == prob.P_LABELING:
            yield t, care, satisfies_labeling(af, p.value), (TRAINING_TYPE,), f"data is {p.value}"
        elif t == prob.P_VOLUME:
            yield t, care, satisfies_volume(af, p.value), (CONVERGENCE_VOLUME,), f"volume {p.value}"
        elif t == prob.P_MISSING:
            yield t, care, satisfies_missing(af, p.value), (MISSING_TOLERANCE,), (
                f"missing level {p.value}"
            )
        elif t == prob.P_DATA_TYPE:
            kinds = ", ".join(sorted(p.value))
            yield t, care, satisfies_datatype(af, p.value), (ATTRIBUTE_TYPES,), (
                f"attribute types {kinds}"
            )
        elif t == prob.P_SEASONALITY:
            if p.value:
                yield t, care, satisfies_seasonality(af), (EVOLUTIVITY,), "seasonal data"
        elif t == prob.P_REPRESENTATIVITY:
            yield t, care, satisfies_representativity(af, p.value), (IMBALANCE_TOLERANCE,), (
                f"representativity {p.value}"
            )
        elif t == prob.P_HOMOGENEITY:
            checks = p.value
            failed = sum(
                1 for ok in (checks.class_balance_ok, checks.scales_ok) if ok is False
            )
            yield t, care, satisfies_homogeneity(
                af, checks.class_balance_ok, checks.scales_ok
            ), (NOISE_TOLERANCE,), f"{failed} homogeneity check(s) failed"
        elif t == prob.P_DISTRIBUTION:
            yield t, care, satisfies_distribution(af, p.value), (BIASED_TOLERANCE,), (
                f"distribution {p.value}"
            )


def solves(
    af: AlgorithmFamilyProfile,
    pb: prob.MLProblem,
    catalog: Catalog,
    config: EngineConfig = DEFAULT_CONFIG,
) -> SatisfactionBreakdown:
    """Score one family against one problem, entry by entry."""
    entries = []
    for t, care, satisfaction, criteria, note in list(
        _domain_entries(af, pb, config)
    ) + list(_data_entries(af, pb, config)):
        grade = "B" if t == "cost" else prob.outer_grade(t)
        weight = care * config.grade_weight(grade)
        entries.append(
            SatisfactionEntry(
                requirement_type=t,
                satisfaction=satisfaction,
                weight=weight,
                mapped_criteria=criteria,
                note=note,
            )
        )
    total_weight = sum(e.weight for e in entries)
    if total_weight <= 0.0:
        raise UnscorableProblem(
            f"problem {pb.id!r} has no requirement with positive weight"
        )
    score = sum(e.weight * e.satisfaction for e in entries) / total_weight
    return SatisfactionBreakdown(
        family_id=af.id, entries=tuple(entries), solves=score
    )


@dataclass(frozen=True)
class RankingResult:
    breakdowns: tuple[SatisfactionBreakdown, ...]
    # family id -> diagnostic for families that could not be scored.
    diagnostics: dict[str, str]


def rank_families(
    pb: prob.MLProblem,
    catalog: Catalog,
    config: EngineConfig = DEFAULT_CONFIG,
) -> RankingResult:
    """Score every family; descending solves, ties broken by family id.

    A family that cannot be scored (missing criterion value) becomes a
    diagnostic instead of aborting the ranking. A problem that no family
    can be scored against raises UnscorableProblem.
    """
    breakdowns = []
    diagnostics: dict[str, str] = {}
    unscorable = None
    for family in catalog.families:
        try:
            breakdowns.append(solves(family, pb, catalog, config))
        except MissingCriterionValue as exc:
            diagnostics[family.id] = str(exc)
        except UnscorableProblem as exc:
            unscorable = exc
    if unscorable is not None and not breakdowns:
        raise unscorable
    breakdowns.sort(key=lambda b: (-b.solves, b.family_id))
    return RankingResult(breakdowns=tuple(breakdowns), diagnostics=diagnostics)


# ---------------------------------------------------------------------------
# Breakdown serialization
# ---------------------------------------------------------------------------

def breakdown_to_doc(b: SatisfactionBreakdown) -> dict:
    return {
        "familyId": b.family_id,
        "solves": round(b.solves, 6),
        "entries": [
            {
                "requirementType": e.requirement_type,
                "satisfaction": round(e.satisfaction, 6),
                "weight": round(e.weight, 6),
                "mappedCriteria": list(e.mapped_criteria),
                "note": e.note,
            }
            for e in b.entries
        ],
    }
