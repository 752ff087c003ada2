"""Shared fixtures and randomized-instance generators for the test suite."""

from __future__ import annotations

import random

import pytest

from mlworkbench import catalog as cat
from mlworkbench import problem as prob

FOUR = ("Low", "Medium", "High", "Very High")
NONE4 = ("None", "Low", "Medium", "High")
LMH = ("Low", "Medium", "High")
PAR = ("None", "Partial", "High")
BUCKETS = ("<=80%", "[80%,90%]", ">=90%")
ATTR = ("Categorical", "Numerical", "Textual")


@pytest.fixture(scope="session")
def seed_catalog():
    return cat.load_seed_catalog()


def _pick(rng: random.Random, options, multi_ok=True):
    """One or (sometimes) several distinct values from an ordered range."""
    if multi_ok and rng.random() < 0.3 and len(options) > 1:
        k = rng.randint(2, min(3, len(options)))
        return tuple(sorted(rng.sample(list(options), k), key=options.index))
    return (rng.choice(options),)


def random_family(rng: random.Random, family_id: str = "rnd") -> cat.AlgorithmFamilyProfile:
    values = {
        cat.TRAINING_TYPE: _pick(rng, ("Supervised", "Unsupervised", "Reinforcement")),
        cat.EXPLAINABILITY: _pick(rng, ("Explainable", "Not explainable"), multi_ok=False),
        cat.INTERPRETABILITY: _pick(rng, ("Interpretable", "Not interpretable"), multi_ok=False),
        cat.ACCURACY: _pick(rng, BUCKETS),
        cat.INCREMENTALITY: _pick(rng, ("Yes", "No"), multi_ok=False),
        cat.EVOLUTIVITY: _pick(rng, LMH),
        cat.TRAINING_COMPLEXITY: _pick(rng, LMH),
        cat.MEMORY_REQUIREMENTS: _pick(rng, LMH),
        cat.PARALLELISM_POTENTIAL: _pick(rng, PAR),
        cat.DECISION_COMPLEXITY: _pick(rng, LMH),
        cat.CONVERGENCE_VOLUME: _pick(rng, LMH),
        cat.MISSING_TOLERANCE: _pick(rng, NONE4),
        cat.ATTRIBUTE_TYPES: tuple(
            sorted(rng.sample(ATTR, rng.randint(1, 3)), key=ATTR.index)
        ),
        cat.IMBALANCE_TOLERANCE: _pick(rng, NONE4),
        cat.NOISE_TOLERANCE: _pick(rng, LMH),
        cat.BIASED_TOLERANCE: _pick(rng, LMH),
    }
    return cat.AlgorithmFamilyProfile(
        id=family_id, name=family_id, description="", criterion_values=values
    )


def random_problem(rng: random.Random) -> prob.MLProblem:
    """A random problem guaranteed to carry at least one positive-weight entry."""
    p = prob.new_project("random instance")
    care = lambda: rng.choice(prob.CARE_LEVELS)
    if rng.random() < 0.7:
        p = prob.set_requirement(
            p,
            prob.DomainRequirementValue(
                prob.R_ACCURACY, rng.choice((0.7, 0.8, 0.85, 0.9, 0.95)), care()
            ),
        )
    for flag in (prob.R_EXPLAINABILITY, prob.R_INTERPRETABILITY, prob.R_ADAPTABILITY):
        if rng.random() < 0.5:
            p = prob.set_requirement(
                p, prob.DomainRequirementValue(flag, rng.random() < 0.7, care())
            )
    if rng.random() < 0.5:
        p = prob.set_requirement(
            p, prob.DomainRequirementValue(prob.R_COST_CPU, rng.choice(FOUR), care())
        )
    if rng.random() < 0.4:
        p = prob.set_requirement(
            p, prob.DomainRequirementValue(prob.R_COST_DATA, rng.choice(FOUR), care())
        )
    if rng.random() < 0.4:
        p = prob.set_requirement(
            p,
            prob.DomainRequirementValue(
                prob.R_DECISION_SPEED,
                prob.DecisionSpeed("max", rng.choice((5.0, 50.0, 500.0, 5000.0))),
                care(),
            ),
        )
    if rng.random() < 0.7:
        p = prob.set_requirement(
            p,
            prob.DataPropertyValue(
                prob.P_LABELING, rng.choice(("Labeled", "Unlabeled", "ToBeLabeled"))
            ),
        )
    if rng.random() < 0.5:
        p = prob.set_requirement(
            p, prob.DataPropertyValue(prob.P_VOLUME, rng.choice(LMH))
        )
    if rng.random() < 0.5:
        p = prob.set_requirement(
            p, prob.DataPropertyValue(prob.P_MISSING, rng.choice(NONE4))
        )
    if rng.random() < 0.4:
        p = prob.set_requirement(
            p,
            prob.DataPropertyValue(
                prob.P_DATA_TYPE, frozenset(rng.sample(ATTR, rng.randint(1, 3)))
            ),
        )
    if rng.random() < 0.3:
        p = prob.set_requirement(
            p, prob.DataPropertyValue(prob.P_SEASONALITY, rng.random() < 0.5)
        )
    if rng.random() < 0.4:
        p = prob.set_requirement(
            p, prob.DataPropertyValue(prob.P_REPRESENTATIVITY, rng.choice(LMH))
        )
    if rng.random() < 0.4:
        p = prob.set_requirement(
            p,
            prob.DataPropertyValue(
                prob.P_HOMOGENEITY,
                prob.HomogeneityChecks(
                    class_balance_ok=rng.choice((True, False, None)),
                    scales_ok=rng.choice((True, False, None)),
                ),
            ),
        )
    if rng.random() < 0.4:
        p = prob.set_requirement(
            p,
            prob.DataPropertyValue(
                prob.P_DISTRIBUTION, rng.choice(("Normal", "Unknown"))
            ),
        )
    if not p.data_properties and all(
        r.care == "Not"
        or (r.requirement_type in (prob.R_EXPLAINABILITY, prob.R_INTERPRETABILITY,
                                   prob.R_ADAPTABILITY) and not r.value)
        for r in p.domain_requirements
    ):
        # Guarantee scorability.
        p = prob.set_requirement(p, prob.DataPropertyValue(prob.P_LABELING, "Labeled"))
    return p
