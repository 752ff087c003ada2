import itertools
import random

import pytest

from mlworkbench import catalog as cat
from mlworkbench import problem as prob
from mlworkbench import validation as val


# ---------------------------------------------------------------------------
# Rank correlation
# ---------------------------------------------------------------------------

def _brute_force_tau(s1, s2):
    items = sorted(s1)
    concordant = discordant = ties1 = ties2 = 0
    for a, b in itertools.combinations(items, 2):
        d1, d2 = s1[a] - s1[b], s2[a] - s2[b]
        if d1 == 0:
            ties1 += 1
        if d2 == 0:
            ties2 += 1
        if d1 != 0 and d2 != 0:
            if (d1 > 0) == (d2 > 0):
                concordant += 1
            else:
                discordant += 1
    n0 = len(items) * (len(items) - 1) // 2
    return (concordant - discordant) / ((n0 - ties1) * (n0 - ties2)) ** 0.5


def test_tau_identical_and_reversed():
    items = ["a", "b", "c", "d", "e"]
    assert val.kendall_tau_b(items, items) == pytest.approx(1.0, abs=1e-12)
    assert val.kendall_tau_b(items, items[::-1]) == pytest.approx(-1.0, abs=1e-12)


def test_tau_single_swap_four_items():
    base = ["a", "b", "c", "d"]
    swapped = ["b", "a", "c", "d"]
    assert val.kendall_tau_b(base, swapped) == pytest.approx(2 / 3, abs=1e-12)


def test_tau_matches_brute_force_with_ties():
    rng = random.Random(4)
    for _ in range(50):
        items = [f"i{k}" for k in range(rng.randint(3, 8))]
        s1 = {i: float(rng.randint(0, 4)) for i in items}
        s2 = {i: float(rng.randint(0, 4)) for i in items}
        try:
            got = val.kendall_tau_b(s1, s2)
        except val.ValidationError:
            continue  # fully tied ranking
        assert got == pytest.approx(_brute_force_tau(s1, s2), abs=1e-12)


def test_tau_rejects_mismatched_sets():
    with pytest.raises(val.ValidationError):
        val.kendall_tau_b(["a", "b"], ["a", "c"])
    with pytest.raises(val.ValidationError):
        val.kendall_tau_b(["a"], ["a"])


def test_spearman_basics():
    items = ["a", "b", "c", "d"]
    assert val.spearman_rho(items, items) == pytest.approx(1.0, abs=1e-12)
    assert val.spearman_rho(items, items[::-1]) == pytest.approx(-1.0, abs=1e-12)
    # Classic d^2 formula check for a permutation without ties.
    perm = ["b", "a", "d", "c"]
    d2 = sum((items.index(i) - perm.index(i)) ** 2 for i in items)
    expected = 1 - 6 * d2 / (4 * (16 - 1))
    assert val.spearman_rho(items, perm) == pytest.approx(expected, abs=1e-12)


# ---------------------------------------------------------------------------
# Expert rankings
# ---------------------------------------------------------------------------

EXPERT_YAML = b"""
schemaVersion: 1
rankings:
  - problemId: p1
    raterId: alice
    families: [decision-tree, random-forest, logistic-regression]
  - problemId: p1
    raterId: bob
    families: [random-forest, decision-tree, logistic-regression]
"""


def test_load_expert_rankings():
    rankings = val.load_expert_rankings(EXPERT_YAML)
    assert len(rankings) == 2
    assert rankings[0].rater_id == "alice"
    with pytest.raises(val.ValidationError):
        val.load_expert_rankings(b"schemaVersion: 1")


def test_expert_ranking_invariants():
    with pytest.raises(val.ValidationError, match="five"):
        val.ExpertRanking("p", "r", tuple(f"f{i}" for i in range(6)))
    with pytest.raises(val.ValidationError, match="duplicate"):
        val.ExpertRanking("p", "r", ("a", "a"))


def _finance_problem():
    p = prob.new_project("p1")
    p = prob.set_requirement(
        p, prob.DomainRequirementValue(prob.R_EXPLAINABILITY, True, "Must")
    )
    p = prob.set_requirement(
        p, prob.DomainRequirementValue(prob.R_ACCURACY, 0.85, "Should")
    )
    p = prob.set_requirement(p, prob.DataPropertyValue(prob.P_LABELING, "Labeled"))
    return p


def test_compare_to_expert(seed_catalog):
    expert = val.ExpertRanking(
        "p1", "alice", ("decision-tree", "logistic-regression", "deep-convolutional-network")
    )
    result = val.compare_to_expert(_finance_problem(), expert, seed_catalog)
    assert set(result.engine_order) == set(expert.ranked_family_ids)
    # The engine agrees the unexplainable family comes last.
    assert result.engine_order[-1] == "deep-convolutional-network"
    assert -1.0 <= result.tau_b <= 1.0
    with pytest.raises(KeyError):
        val.compare_to_expert(
            _finance_problem(),
            val.ExpertRanking("p1", "x", ("no-such-family",)),
            seed_catalog,
        )


def test_agreement_report(seed_catalog):
    rankings = val.load_expert_rankings(EXPERT_YAML)
    report = val.agreement_report({"p1": _finance_problem()}, rankings, seed_catalog)
    assert set(report.per_rater) == {("p1", "alice"), ("p1", "bob")}
    assert "p1" in report.mean_per_problem
    assert ("alice", "bob") in report.inter_rater
    # Alice and Bob disagree only on one adjacent pair of three items.
    assert report.inter_rater[("alice", "bob")] == pytest.approx(1 / 3, abs=1e-12)
