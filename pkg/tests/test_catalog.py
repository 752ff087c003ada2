import pytest
import yaml

from mlworkbench import catalog as cat


def test_scale_ranks():
    assert cat.CANONICAL.rank("Low") == 1
    assert cat.CANONICAL.rank("Very High") == 4
    assert cat.WITH_NONE.rank("None") == 1
    assert cat.PARALLELISM.rank("Partial") == 2
    with pytest.raises(KeyError):
        cat.CANONICAL.rank("Gigantic")


def test_grade_weights():
    assert cat.GRADE_WEIGHTS == {
        "A": 8.0, "A-B": 6.0, "B": 4.0, "B-C": 3.0, "C": 2.0, "D": 1.0
    }
    # Doubling per full grade; mixed grades are arithmetic means.
    assert cat.grade_weight("A") == 2 * cat.grade_weight("B") == 4 * cat.grade_weight("C")
    assert cat.grade_weight("A-B") == (cat.grade_weight("A") + cat.grade_weight("B")) / 2
    assert cat.grade_weight("B-C") == (cat.grade_weight("B") + cat.grade_weight("C")) / 2
    with pytest.raises(KeyError):
        cat.grade_weight("E")


def test_seed_catalog_loads_and_validates(seed_catalog):
    assert len(seed_catalog.criteria) == 27
    assert len(seed_catalog.families) >= 12
    assert cat.validate_catalog(seed_catalog) == []


def test_seed_catalog_criterion_ids_unique(seed_catalog):
    ids = [c.id for c in seed_catalog.criteria]
    assert len(ids) == len(set(ids))


def test_seed_catalog_families_carry_required_criteria(seed_catalog):
    for f in seed_catalog.families:
        for cid in cat.REQUIRED_CRITERIA:
            assert cid in f.criterion_values, (f.id, cid)


def test_seed_catalog_values_inside_ranges(seed_catalog):
    by_id = seed_catalog.criteria_by_id
    for f in seed_catalog.families:
        for cid, values in f.criterion_values.items():
            for v in values:
                assert v in by_id[cid].allowed_values, (f.id, cid, v)


def test_incrementality_values_survive_yaml(seed_catalog):
    # Yes/No must stay strings, not YAML 1.1 booleans.
    for f in seed_catalog.families:
        assert set(f.criterion_values[cat.INCREMENTALITY]) <= {"Yes", "No"}


def test_roundtrip_serialize(seed_catalog):
    text = cat.serialize_catalog(seed_catalog)
    again = cat.load_catalog(text)
    assert again == seed_catalog


def _minimal_doc(seed_catalog):
    return yaml.safe_load(cat.serialize_catalog(seed_catalog))


def test_duplicate_family_id_rejected(seed_catalog):
    doc = _minimal_doc(seed_catalog)
    doc["families"].append(doc["families"][0])
    with pytest.raises(cat.CatalogError, match="duplicate family id"):
        cat.load_catalog(yaml.safe_dump(doc))


def test_unknown_criterion_rejected(seed_catalog):
    doc = _minimal_doc(seed_catalog)
    doc["families"][0]["values"]["no-such-criterion"] = ["Low"]
    with pytest.raises(cat.CatalogError, match="unknown criterion id"):
        cat.load_catalog(yaml.safe_dump(doc))


def test_value_outside_range_rejected(seed_catalog):
    doc = _minimal_doc(seed_catalog)
    doc["families"][0]["values"]["noise-tolerance"] = ["Enormous"]
    with pytest.raises(cat.CatalogError, match="outside range"):
        cat.load_catalog(yaml.safe_dump(doc))


def test_missing_required_criterion_is_one_violation(seed_catalog):
    doc = _minimal_doc(seed_catalog)
    family_id = doc["families"][0]["id"]
    del doc["families"][0]["values"][cat.TRAINING_TYPE]
    with pytest.raises(cat.CatalogError) as exc_info:
        cat.load_catalog(yaml.safe_dump(doc))
    message = str(exc_info.value)
    assert family_id in message and cat.TRAINING_TYPE in message


def test_validate_reports_locations(seed_catalog):
    broken = seed_catalog.with_family(
        cat.AlgorithmFamilyProfile(
            id="broken", name="broken", description="",
            criterion_values={"accuracy": ("42%",)},
        )
    )
    violations = cat.validate_catalog(broken)
    assert any("broken" in v and "accuracy" in v for v in violations)
    assert any("missing value" in v for v in violations)


def test_parse_failure_reported():
    with pytest.raises(cat.CatalogError, match="parse failure"):
        cat.load_catalog(b"{unbalanced: [")
    with pytest.raises(cat.CatalogError, match="schemaVersion"):
        cat.load_catalog(b"criteria: []")


def test_missing_criterion_value_error(seed_catalog):
    family = seed_catalog.families[0]
    with pytest.raises(cat.MissingCriterionValue) as exc_info:
        family.values("no-such-criterion")
    assert exc_info.value.family_id == family.id


def test_with_family_replaces_and_appends(seed_catalog):
    existing = seed_catalog.families[0]
    renamed = cat.AlgorithmFamilyProfile(
        id=existing.id, name="renamed", description=existing.description,
        criterion_values=existing.criterion_values,
    )
    updated = seed_catalog.with_family(renamed)
    assert updated.family(existing.id).name == "renamed"
    assert len(updated.families) == len(seed_catalog.families)
    fresh = cat.AlgorithmFamilyProfile(
        id="brand-new", name="n", description="", criterion_values=existing.criterion_values
    )
    appended = seed_catalog.with_family(fresh)
    assert len(appended.families) == len(seed_catalog.families) + 1
