import math
import random

import pytest

from mlworkbench import profiler


def _csv(rows):
    return ("\n".join(rows)).encode("utf-8")


# ---------------------------------------------------------------------------
# Ingestion
# ---------------------------------------------------------------------------

def test_ingest_basic():
    table = profiler.ingest(_csv(["a,b", "1,x", "2,y"]))
    assert table.columns == ("a", "b")
    assert table.row_count == 2
    assert table.column_values("a") == ["1", "2"]


def test_ingest_null_tokens():
    table = profiler.ingest(_csv(["a", "1", "NA", "", "null"]))
    assert table.column_values("a") == ["1", None, None]  # blank line dropped by csv


def test_ingest_custom_delimiter_and_no_header():
    table = profiler.ingest(
        _csv(["1;2", "3;4"]), profiler.IngestOptions(delimiter=";", header=False)
    )
    assert table.columns == ("column1", "column2")
    assert table.row_count == 2


def test_ingest_ragged_row_reports_line():
    with pytest.raises(profiler.ProfilerError, match="row 3"):
        profiler.ingest(_csv(["a,b", "1,2", "1,2,3"]))


def test_ingest_empty_rejected():
    with pytest.raises(profiler.ProfilerError, match="empty"):
        profiler.ingest(b"")


# ---------------------------------------------------------------------------
# Type inference and column statistics
# ---------------------------------------------------------------------------

def test_infer_type():
    assert profiler.infer_type(["1", "2.5", "-3e2", None]) == "Numerical"
    assert profiler.infer_type(["red", "green", "red"]) == "Categorical"
    long_texts = [f"unique free text {i}" for i in range(500)]
    assert profiler.infer_type(long_texts) == "Textual"
    with pytest.raises(profiler.ProfilerError):
        profiler.infer_type([None, None])


def test_categorical_threshold_scales_with_rows():
    # 30 distinct values qualify as categorical once 5% of rows exceeds 30.
    values = [f"code-{i % 30}" for i in range(1000)]
    assert profiler.infer_type(values, row_count=1000) == "Categorical"
    assert profiler.infer_type(values[:60], row_count=60) == "Textual"


def test_moment_accumulator_matches_batch():
    rng = random.Random(3)
    xs = [rng.gauss(5, 2) for _ in range(500)]
    acc = profiler._MomentAccumulator()
    for x in xs:
        acc.add(x)
    n = len(xs)
    mean = sum(xs) / n
    var = sum((x - mean) ** 2 for x in xs) / n
    m3 = sum((x - mean) ** 3 for x in xs) / n
    m4 = sum((x - mean) ** 4 for x in xs) / n
    assert acc.mean == pytest.approx(mean, rel=1e-12)
    assert acc.variance == pytest.approx(var, rel=1e-9)
    assert acc.skewness == pytest.approx(m3 / var**1.5, rel=1e-9)
    assert acc.kurtosis == pytest.approx(m4 / var**2, rel=1e-9)
    assert acc.min == min(xs) and acc.max == max(xs)


# ---------------------------------------------------------------------------
# Buckets and checks
# ---------------------------------------------------------------------------

def test_volume_buckets():
    assert profiler.volume_bucket(999) == "Low"
    assert profiler.volume_bucket(1000) == "Medium"
    assert profiler.volume_bucket(100_000) == "Medium"
    assert profiler.volume_bucket(100_001) == "High"


def test_missing_buckets():
    assert profiler.missing_bucket(0.0) == "None"
    assert profiler.missing_bucket(0.01) == "Low"
    assert profiler.missing_bucket(0.05) == "Medium"
    assert profiler.missing_bucket(0.19) == "Medium"
    assert profiler.missing_bucket(0.20) == "High"


def test_normality_seeded_samples():
    rng = random.Random(12345)
    normal = [rng.gauss(0, 1) for _ in range(1000)]
    assert profiler.normality(normal) == "Normal"
    heavy = [rng.paretovariate(1.5) for _ in range(1000)]
    assert profiler.normality(heavy) == "Unknown"
    assert profiler.normality(normal[:10]) == "Unknown"  # too small
    assert profiler.normality([1.0] * 100) == "Unknown"  # degenerate


def test_scale_homogeneity():
    assert profiler.scale_homogeneity([1.0, 5.0, 9.9]) is True
    assert profiler.scale_homogeneity([1.0, 11.0]) is False
    assert profiler.scale_homogeneity([0.0, 3.0]) is True  # single positive std
    assert profiler.scale_homogeneity([]) is True


# ---------------------------------------------------------------------------
# Full report
# ---------------------------------------------------------------------------

def _fixture_100_rows():
    rng = random.Random(99)
    rows = ["amount,category,score"]
    for i in range(100):
        amount = "NA" if i < 7 else f"{rng.uniform(10, 100):.2f}"
        rows.append(f"{amount},{'ab'[i % 2]},{rng.gauss(0, 1):.5f}")
    return _csv(rows)


def test_profile_golden_null_fraction():
    report = profiler.profile(profiler.ingest(_fixture_100_rows()))
    assert report.row_count == 100
    assert report.column("amount").null_fraction == pytest.approx(0.07)
    assert report.missing_level == "Medium"
    assert report.volume_bucket == "Low"
    assert report.data_types == frozenset({"Numerical", "Categorical"})


def test_profile_deterministic():
    data = _fixture_100_rows()
    a = profiler.report_to_doc(profiler.profile(profiler.ingest(data)))
    b = profiler.report_to_doc(profiler.profile(profiler.ingest(data)))
    assert a == b


def test_profile_class_balance():
    balanced = _csv(["x,label"] + [f"{i},{'ab'[i % 2]}" for i in range(40)])
    report = profiler.profile(profiler.ingest(balanced), label_column="label")
    assert report.class_balance_ok is True
    skewed = _csv(["x,label"] + [f"{i},{'a' if i else 'b'}" for i in range(40)])
    report = profiler.profile(profiler.ingest(skewed), label_column="label")
    assert report.class_balance_ok is False
    with pytest.raises(profiler.ProfilerError, match="label"):
        profiler.profile(profiler.ingest(balanced), label_column="nope")


def test_profile_correlated_pairs():
    rng = random.Random(5)
    rows = ["x,y,z"]
    for _ in range(200):
        x = rng.uniform(0, 1)
        rows.append(f"{x:.6f},{2 * x + 0.001 * rng.random():.6f},{rng.random():.6f}")
    report = profiler.profile(profiler.ingest(_csv(rows)))
    flagged = {(a, b) for a, b, _ in report.correlated_pairs}
    assert ("x", "y") in flagged
    assert all("z" not in pair for pair in flagged)


def test_profile_distribution_requires_all_normal():
    rng = random.Random(8)
    rows = ["g,u"]
    for _ in range(500):
        rows.append(f"{rng.gauss(0, 1):.6f},{rng.uniform(0, 1):.6f}")
    report = profiler.profile(profiler.ingest(_csv(rows)))
    assert report.column("g").normality == "Normal"
    assert report.distribution == "Unknown"
    rows = ["g,h"]
    for _ in range(500):
        rows.append(f"{rng.gauss(0, 1):.6f},{rng.gauss(5, 2):.6f}")
    report = profiler.profile(profiler.ingest(_csv(rows)))
    assert report.distribution == "Normal"


def test_profile_all_null_column_noted():
    report = profiler.profile(profiler.ingest(_csv(["a,b", "1,NA", "2,NA"])))
    column = report.column("b")
    assert column.inferred_type is None
    assert "null" in column.note


def test_report_doc_roundtrip():
    report = profiler.profile(profiler.ingest(_fixture_100_rows()))
    doc = profiler.report_to_doc(report)
    again = profiler.report_from_doc(doc)
    assert profiler.report_to_doc(again) == doc


def test_as_data_properties():
    from mlworkbench import problem as prob

    report = profiler.profile(profiler.ingest(_fixture_100_rows()))
    props = {p.property_type: p for p in report.as_data_properties()}
    assert props[prob.P_VOLUME].value == "Low"
    assert props[prob.P_MISSING].value == "Medium"
    assert all(p.provenance == "profiled" for p in props.values())
