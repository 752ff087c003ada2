"""Rank-correlation harness and the brute-force scoring oracle.

Compares engine rankings against human expert shortlists with Kendall
tau-b (Spearman rho as a second opinion), and re-derives the Solves score
by literal transcription of the satisfaction formulas, deliberately
sharing no helper code with the engine. The oracle exists so property
tests can catch any drift in the engine's aggregation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import yaml

from . import problem as prob
from .catalog import Catalog

EXPERT_SCHEMA_VERSION = 1


class ValidationError(Exception):
    pass


# ---------------------------------------------------------------------------
# Rank correlation
# ---------------------------------------------------------------------------

def _rank_positions(ordering: Sequence[str]) -> dict[str, int]:
    return {item: i for i, item in enumerate(ordering)}


def kendall_tau_b(r1: Sequence, r2: Sequence) -> float:
    """Kendall tau-b between two rankings of the same item set.

    Rankings are orderings (best first); ties are expressed by passing
    (item, rank) score lists instead of plain orderings.
    """
    s1, s2 = _as_scores(r1), _as_scores(r2)
    if set(s1) != set(s2):
        raise ValidationError("rankings must cover the same item set")
    items = sorted(s1)
    n = len(items)
    if n < 2:
        raise ValidationError("need at least two items to correlate")
    concordant = discordant = 0
    ties1 = ties2 = 0
    for i in range(n):
        for j in range(i + 1, n):
            a, b = items[i], items[j]
            d1 = s1[a] - s1[b]
            d2 = s2[a] - s2[b]
            if d1 == 0 and d2 == 0:
                ties1 += 1
                ties2 += 1
            elif d1 == 0:
                ties1 += 1
            elif d2 == 0:
                ties2 += 1
            elif (d1 > 0) == (d2 > 0):
                concordant += 1
            else:
                discordant += 1
    n0 = n * (n - 1) // 2
    denom = ((n0 - ties1) * (n0 - ties2)) ** 0.5
    if denom == 0:
        raise ValidationError("degenerate ranking: all items tied")
    return (concordant - discordant) / denom


def spearman_rho(r1: Sequence, r2: Sequence) -> float:
    """Spearman rho on the same inputs as kendall_tau_b (average ranks for ties)."""
    s1, s2 = _as_scores(r1), _as_scores(r2)
    if set(s1) != set(s2):
        raise ValidationError("rankings must cover the same item set")
    items = sorted(s1)
    x = _average_ranks([s1[i] for i in items])
    y = _average_ranks([s2[i] for i in items])
    n = len(items)
    mx, my = sum(x) / n, sum(y) / n
    cov = sum((a - mx) * (b - my) for a, b in zip(x, y))
    vx = sum((a - mx) ** 2 for a in x)
    vy = sum((b - my) ** 2 for b in y)
    if vx == 0 or vy == 0:
        raise ValidationError("degenerate ranking: all items tied")
    return cov / (vx * vy) ** 0.5


def _as_scores(ranking: Sequence) -> dict[str, float]:
    if isinstance(ranking, dict):
        return dict(ranking)
    ranking = list(ranking)
    if ranking and isinstance(ranking[0], tuple):
        return {item: float(score) for item, score in ranking}
    return {item: float(i) for i, item in enumerate(ranking)}


def _average_ranks(scores: list[float]) -> list[float]:
    order = sorted(range(len(scores)), key=lambda i: scores[i])
    ranks = [0.0] * len(scores)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and scores[order[j + 1]] == scores[order[i]]:
            j += 1
        avg = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


# ---------------------------------------------------------------------------
# Expert rankings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpertRanking:
    problem_id: str
    rater_id: str
    ranked_family_ids: tuple[str, ...]  # best first, at most five

    def __post_init__(self):
        if len(self.ranked_family_ids) > 5:
            raise ValidationError("expert rankings are capped at five families")
        if len(set(self.ranked_family_ids)) != len(self.ranked_family_ids):
            raise ValidationError("expert ranking contains duplicate family ids")


def load_expert_rankings(source) -> list[ExpertRanking]:
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    elif hasattr(source, "read"):
        source = source.read()
        if isinstance(source, bytes):
            source = source.decode("utf-8")
    doc = yaml.safe_load(source)
    if not isinstance(doc, dict) or "rankings" not in doc:
        raise ValidationError("expert ranking file must carry a rankings list")
    return [
        ExpertRanking(
            problem_id=str(r["problemId"]),
            rater_id=str(r["raterId"]),
            ranked_family_ids=tuple(r["families"]),
        )
        for r in doc["rankings"]
    ]


@dataclass(frozen=True)
class ComparisonResult:
    tau_b: float
    spearman: float
    engine_order: tuple[str, ...]
    expert_order: tuple[str, ...]


def compare_to_expert(
    pb: prob.MLProblem,
    expert: ExpertRanking,
    catalog: Catalog,
    config=None,
) -> ComparisonResult:
    """Correlate the engine's ranking with one expert shortlist.

    The engine ranks everything, so its order is intersected down to the
    expert's item set before correlating.
    """
    from .engine import DEFAULT_CONFIG, rank_families

    for fid in expert.ranked_family_ids:
        catalog.family(fid)  # raises for unknown ids
    result = rank_families(pb, catalog, config or DEFAULT_CONFIG)
    expert_set = set(expert.ranked_family_ids)
    engine_order = tuple(
        b.family_id for b in result.breakdowns if b.family_id in expert_set
    )
    if not engine_order:
        raise ValidationError("no overlap between engine and expert rankings")
    tau = kendall_tau_b(engine_order, expert.ranked_family_ids)
    rho = spearman_rho(engine_order, expert.ranked_family_ids)
    return ComparisonResult(
        tau_b=tau,
        spearman=rho,
        engine_order=engine_order,
        expert_order=expert.ranked_family_ids,
    )


@dataclass(frozen=True)
class AgreementReport:
    # (problem id, rater id) -> tau-b
    per_rater: dict[tuple[str, str], float]
    mean_per_problem: dict[str, float]
    # (rater a, rater b) -> mean tau-b over shared problems
    inter_rater: dict[tuple[str, str], float]


def agreement_report(
    problems: dict[str, prob.MLProblem],
    rankings: Sequence[ExpertRanking],
    catalog: Catalog,
    config=None,
) -> AgreementReport:
    per_rater: dict[tuple[str, str], float] = {}
    by_problem: dict[str, list[float]] = {}
    for r in rankings:
        pb = problems.get(r.problem_id)
        if pb is None:
            raise ValidationError(f"no problem {r.problem_id!r} for ranking by {r.rater_id!r}")
        tau = compare_to_expert(pb, r, catalog, config).tau_b
        per_rater[(r.problem_id, r.rater_id)] = tau
        by_problem.setdefault(r.problem_id, []).append(tau)

    inter: dict[tuple[str, str], list[float]] = {}
    grouped: dict[str, list[ExpertRanking]] = {}
    for r in rankings:
        grouped.setdefault(r.problem_id, []).append(r)
    for group in grouped.values():
        for i, a in enumerate(group):
            for b in group[i + 1 :]:
                shared = set(a.ranked_family_ids) & set(b.ranked_family_ids)
                if len(shared) < 2:
                    continue
                oa = tuple(f for f in a.ranked_family_ids if f in shared)
                ob = tuple(f for f in b.ranked_family_ids if f in shared)
                key = tuple(sorted((a.rater_id, b.rater_id)))
                inter.setdefault(key, []).append(kendall_tau_b(oa, ob))

    return AgreementReport(
        per_rater=per_rater,
        mean_per_problem={p: sum(v) / len(v) for p, v in by_problem.items()},
        inter_rater={k: sum(v) / len(v) for k, v in inter.items()},
    )


# ---------------------------------------------------------------------------
# Brute-force scoring oracle
# ---------------------------------------------------------------------------

# Independent label tables; deliberately restated rather than imported.
_FOUR = {"Low": 1, "Medium": 2, "High": 3, "Very High": 4}
_FOUR_LABELS = {1: "Low", 2: "Medium", 3: "High", 4: "Very High"}
_NONE4 = {"None": 1, "Low": 2, "Medium": 3, "High": 4}
_LMH = {"Low": 1, "Medium": 2, "High": 3}
_PAR = {"None": 1, "Partial": 2, "High": 3}
_BUCKET_NUM = {"<=80%": 0.75, "[80%,90%]": 0.85, ">=90%": 0.95}
_ORACLE_GRADE_ORDER = ("A", "A-B", "B", "B-C", "C", "D")


def _leq(r1: float, r2: float) -> float:
    v = 1.0 - (r1 - r2) / 3.0
    if v > 1.0:
        v = 1.0
    if v < 0.0:
        v = 0.0
    return v


def oracle_solves(af, pb, catalog, config) -> float:
    """Literal recomputation of the normalized weighted score.

    Straight-line transcription of every satisfaction formula; no code
    shared with the engine beyond the domain types themselves.
    """
    gw = config.grade_weights
    cn = config.care_numerics
    terms: list[tuple[float, float]] = []  # (weight, satisfaction)

    def grade_for(rt: str) -> str:
        grades = {
            "accuracy": "B",
            "explainability": "A",
            "interpretability": "A-B",
            "adaptability": "C",
            "cost": "B",
            "decision-speed": "C",
            "labeling": "A",
            "volume": "B",
            "missing-values": "B-C",
            "data-type": "D",
            "seasonality": "D",
            "representativity": "B",
            "homogeneity": "C",
            "distribution": "C",
        }
        return grades[rt]

    cost_parts: list[tuple[float, float]] = []
    for r in pb.domain_requirements:
        care = cn[r.care]
        if care == 0.0:
            continue
        t = r.requirement_type
        if t == "accuracy":
            acc = max(_BUCKET_NUM[v] for v in af.criterion_values["accuracy"])
            s = acc / float(r.value)
            if s > 1.0:
                s = 1.0
            terms.append((care * gw[grade_for(t)], s))
        elif t == "explainability" and r.value:
            s = 1.0 if "Explainable" in af.criterion_values["explainability"] else 0.0
            terms.append((care * gw[grade_for(t)], s))
        elif t == "interpretability" and r.value:
            s = 1.0 if "Interpretable" in af.criterion_values["interpretability"] else 0.0
            terms.append((care * gw[grade_for(t)], s))
        elif t == "adaptability" and r.value:
            inc = 1.0 if "Yes" in af.criterion_values["incrementality"] else 0.0
            evo = max((_LMH[v] - 1) / 2.0 for v in af.criterion_values["evolutivity"])
            s = (gw["C"] * inc + gw["D"] * evo) / (gw["C"] + gw["D"])
            terms.append((care * gw[grade_for(t)], s))
        elif t == "cost-cpu":
            budget = _FOUR[r.value]
            train = min(_FOUR[v] for v in af.criterion_values["training-complexity"])
            mem = min(_FOUR[v] for v in af.criterion_values["memory-requirements"])
            par = max(_PAR[v] for v in af.criterion_values["parallelism-potential"])
            mirrored = 5 - par
            s = (
                gw["B"] * _leq(train, budget)
                + gw["C"] * _leq(mem, budget)
                + gw["C"] * _leq(mirrored, budget)
            ) / (gw["B"] + 2 * gw["C"])
            cost_parts.append((care, s))
        elif t == "cost-data":
            budget = _FOUR[r.value]
            mem = min(_FOUR[v] for v in af.criterion_values["memory-requirements"])
            cost_parts.append((care, _leq(mem, budget)))
        elif t == "decision-speed":
            ms = r.value.milliseconds
            for bound, bucket in config.speed_thresholds:
                if ms <= bound:
                    budget = _FOUR[bucket]
                    break
            else:
                budget = _FOUR[config.speed_overflow_bucket]
            dec = min(_FOUR[v] for v in af.criterion_values["decision-complexity"])
            terms.append((care * gw[grade_for(t)], _leq(dec, budget)))
    if cost_parts:
        care = sum(c for c, _ in cost_parts) / len(cost_parts)
        s = sum(v for _, v in cost_parts) / len(cost_parts)
        terms.append((care * gw[grade_for("cost")], s))

    for p in pb.data_properties:
        t = p.property_type
        if t == "labeling":
            ok = 0.0
            for tt in af.criterion_values["training-type"]:
                if (p.value, tt) in {
                    ("Labeled", "Supervised"),
                    ("Unlabeled", "Unsupervised"),
                    ("ToBeLabeled", "Supervised"),
                }:
                    ok = 1.0
            terms.append((gw[grade_for(t)], ok))
        elif t == "volume":
            need = min(_LMH[v] for v in af.criterion_values["convergence-volume"])
            terms.append((gw[grade_for(t)], _leq(need, _LMH[p.value])))
        elif t == "missing-values":
            tol = max(_NONE4[v] for v in af.criterion_values["missing-values-tolerance"])
            terms.append((gw[grade_for(t)], _leq(_NONE4[p.value], tol)))
        elif t == "data-type":
            supported = set(af.criterion_values["attribute-types"])
            present = set(p.value)
            terms.append((gw[grade_for(t)], len(present & supported) / len(present)))
        elif t == "seasonality":
            if p.value:
                evo = max((_LMH[v] - 1) / 2.0 for v in af.criterion_values["evolutivity"])
                terms.append((gw[grade_for(t)], evo))
        elif t == "representativity":
            demand = {"High": 1, "Medium": 3, "Low": 4}[p.value]
            tol = max(_NONE4[v] for v in af.criterion_values["data-imbalance-tolerance"])
            terms.append((gw[grade_for(t)], _leq(demand, tol)))
        elif t == "homogeneity":
            failed = sum(
                1 for ok in (p.value.class_balance_ok, p.value.scales_ok) if ok is False
            )
            demand = {0: 1, 1: 3, 2: 4}[failed]
            tol = max(
                {"Low": 2, "Medium": 3, "High": 4}[v]
                for v in af.criterion_values["noise-tolerance"]
            )
            terms.append((gw[grade_for(t)], _leq(demand, tol)))
        elif t == "distribution":
            if p.value == "Normal":
                terms.append((gw[grade_for(t)], 1.0))
            else:
                tol = max(
                    (_LMH[v] - 1) / 2.0
                    for v in af.criterion_values["biased-distribution-tolerance"]
                )
                terms.append((gw[grade_for(t)], tol))

    total = sum(w for w, _ in terms)
    if total <= 0.0:
        raise ValidationError("oracle: no positive-weight requirement")
    return sum(w * s for w, s in terms) / total
