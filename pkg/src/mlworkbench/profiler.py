"""Tabular data ingestion and profiling.

Computes the auto-checkable data properties from a delimited text file:
per-column types and statistics, missing-value levels, scale homogeneity,
normality, and an optional pairwise correlation flag. Everything except
distinct counting is a single streaming pass with bounded memory.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Optional

from . import problem as prob

DEFAULT_NULL_TOKENS = frozenset({"", "NA", "N/A", "null", "NULL", "NaN"})

#: Chi-square(2) critical value at alpha = 0.05 for the Jarque-Bera test.
JB_CRITICAL_0_05 = 5.991464547107979
#: Minimum sample size for the normality test to say anything.
NORMALITY_MIN_N = 20
#: Scales are "similar" when max/min positive std ratio stays within this.
SCALE_RATIO_LIMIT = 10.0
#: Class balance is ok while majority/minority frequency ratio stays within this.
CLASS_BALANCE_RATIO_LIMIT = 3.0
#: Pairwise |Pearson r| at or above this flags correlated attributes.
CORRELATION_FLAG_THRESHOLD = 0.9


class ProfilerError(Exception):
    pass


@dataclass(frozen=True)
class IngestOptions:
    delimiter: str = ","
    header: bool = True
    quotechar: str = '"'
    null_tokens: frozenset[str] = DEFAULT_NULL_TOKENS


@dataclass(frozen=True)
class RawTable:
    columns: tuple[str, ...]
    rows: tuple[tuple[Optional[str], ...], ...]  # None marks a null cell

    @property
    def row_count(self) -> int:
        return len(self.rows)

    def column_values(self, name: str) -> list[Optional[str]]:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]


def ingest(source, options: IngestOptions = IngestOptions()) -> RawTable:
    """Parse delimited text into a rectangular table.

    Ragged rows and empty input are rejected with the offending location.
    """
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    elif hasattr(source, "read"):
        source = source.read()
        if isinstance(source, bytes):
            source = source.decode("utf-8")
    reader = csv.reader(
        io.StringIO(source), delimiter=options.delimiter, quotechar=options.quotechar
    )
    records = [row for row in reader if row]
    if not records:
        raise ProfilerError("empty input")
    if options.header:
        columns = tuple(c.strip() for c in records[0])
        body = records[1:]
    else:
        columns = tuple(f"column{i + 1}" for i in range(len(records[0])))
        body = records
    width = len(columns)
    rows = []
    for i, record in enumerate(body):
        if len(record) != width:
            line = i + (2 if options.header else 1)
            raise ProfilerError(
                f"row {line}: expected {width} fields, found {len(record)}"
            )
        rows.append(
            tuple(None if cell.strip() in options.null_tokens else cell for cell in record)
        )
    return RawTable(columns=columns, rows=tuple(rows))


# ---------------------------------------------------------------------------
# Column-level statistics
# ---------------------------------------------------------------------------

class _MomentAccumulator:
    """Online central moments up to order four (single pass, O(1) memory)."""

    def __init__(self):
        self.n = 0
        self.mean = 0.0
        self.m2 = 0.0
        self.m3 = 0.0
        self.m4 = 0.0
        self.min = math.inf
        self.max = -math.inf

    def add(self, x: float) -> None:
        n1 = self.n
        self.n += 1
        delta = x - self.mean
        delta_n = delta / self.n
        delta_n2 = delta_n * delta_n
        term1 = delta * delta_n * n1
        self.mean += delta_n
        self.m4 += (
            term1 * delta_n2 * (self.n * self.n - 3 * self.n + 3)
            + 6 * delta_n2 * self.m2
            - 4 * delta_n * self.m3
        )
        self.m3 += term1 * delta_n * (self.n - 2) - 3 * delta_n * self.m2
        self.m2 += term1
        self.min = min(self.min, x)
        self.max = max(self.max, x)

    @property
    def variance(self) -> float:
        return self.m2 / self.n if self.n else 0.0

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)

    @property
    def skewness(self) -> float:
        if self.n == 0 or self.m2 == 0.0:
            return 0.0
        return math.sqrt(self.n) * self.m3 / self.m2**1.5

    @property
    def kurtosis(self) -> float:
        if self.n == 0 or self.m2 == 0.0:
            return 3.0
        return self.n * self.m4 / (self.m2 * self.m2)


def _parse_number(cell: str) -> Optional[float]:
    try:
        return float(cell)
    except ValueError:
        return None


def infer_type(values, row_count: Optional[int] = None) -> str:
    """Classify a column as Numerical, Categorical, or Textual.

    All non-null values parsing as numbers means Numerical; otherwise a
    small closed vocabulary means Categorical, anything else Textual.
    """
    non_null = [v for v in values if v is not None]
    if not non_null:
        raise ProfilerError("cannot infer type: column has no non-null values")
    rows = row_count if row_count is not None else len(values)
    if all(_parse_number(v) is not None for v in non_null):
        return "Numerical"
    distinct = len(set(non_null))
    if distinct <= max(20, 0.05 * rows):
        return "Categorical"
    return "Textual"


@dataclass(frozen=True)
class ColumnProfile:
    name: str
    inferred_type: Optional[str]  # None when all values are null
    null_fraction: float
    distinct_count: int
    mean: Optional[float] = None
    standard_deviation: Optional[float] = None
    min: Optional[float] = None
    max: Optional[float] = None
    normality: Optional[str] = None  # Normal / Unknown, numerical columns only
    note: str = ""


@dataclass(frozen=True)
class ProfileReport:
    row_count: int
    columns: tuple[ColumnProfile, ...]
    volume_bucket: str
    missing_level: str
    data_types: frozenset[str]
    scales_similar: bool
    class_balance_ok: Optional[bool]
    distribution: str
    correlated_pairs: tuple[tuple[str, str, float], ...] = ()
    memory_footprint_bytes: int = 0

    def column(self, name: str) -> ColumnProfile:
        for c in self.columns:
            if c.name == name:
                return c
        raise KeyError(f"no column {name!r}")

    def as_data_properties(self) -> list[prob.DataPropertyValue]:
        """Project the report onto the profiled data-property vocabulary."""
        props = [
            prob.DataPropertyValue(prob.P_VOLUME, self.volume_bucket, prob.PROVENANCE_PROFILED),
            prob.DataPropertyValue(prob.P_MISSING, self.missing_level, prob.PROVENANCE_PROFILED),
            prob.DataPropertyValue(
                prob.P_HOMOGENEITY,
                prob.HomogeneityChecks(
                    class_balance_ok=self.class_balance_ok, scales_ok=self.scales_similar
                ),
                prob.PROVENANCE_PROFILED,
            ),
            prob.DataPropertyValue(prob.P_DISTRIBUTION, self.distribution, prob.PROVENANCE_PROFILED),
        ]
        if self.data_types:
            props.insert(
                2,
                prob.DataPropertyValue(
                    prob.P_DATA_TYPE, frozenset(self.data_types), prob.PROVENANCE_PROFILED
                ),
            )
        return props


def volume_bucket(row_count: int) -> str:
    if row_count < 1_000:
        return "Low"
    if row_count <= 100_000:
        return "Medium"
    return "High"


def missing_bucket(max_null_fraction: float) -> str:
    if max_null_fraction == 0.0:
        return "None"
    if max_null_fraction < 0.05:
        return "Low"
    if max_null_fraction < 0.20:
        return "Medium"
    return "High"


def missing_stats(table: RawTable) -> tuple[dict[str, float], str]:
    """Per-column null fractions and the overall missing level."""
    fractions = {}
    for name in table.columns:
        values = table.column_values(name)
        nulls = sum(1 for v in values if v is None)
        fractions[name] = nulls / len(values) if values else 0.0
    level = missing_bucket(max(fractions.values()) if fractions else 0.0)
    return fractions, level


def normality(values) -> str:
    """Jarque-Bera normality check at alpha = 0.05; small samples and
    degenerate columns stay Unknown."""
    xs = [x for x in (values if values else []) if x is not None]
    if len(xs) < NORMALITY_MIN_N:
        return "Unknown"
    acc = _MomentAccumulator()
    for x in xs:
        acc.add(float(x))
    if acc.m2 == 0.0:
        return "Unknown"
    jb = acc.n / 6.0 * (acc.skewness**2 + (acc.kurtosis - 3.0) ** 2 / 4.0)
    return "Normal" if jb < JB_CRITICAL_0_05 else "Unknown"


def scale_homogeneity(stds) -> bool:
    positive = [s for s in stds if s and s > 0.0]
    if len(positive) < 2:
        return True
    return max(positive) / min(positive) <= SCALE_RATIO_LIMIT


def profile(
    table: RawTable,
    label_column: Optional[str] = None,
    flag_correlations: bool = True,
) -> ProfileReport:
    """Assemble the full report. Deterministic for fixed bytes + options."""
    if label_column is not None and label_column not in table.columns:
        raise ProfilerError(f"unknown label column {label_column!r}")

    accumulators: dict[str, _MomentAccumulator] = {}
    numeric_columns: list[str] = []
    profiles: list[ColumnProfile] = []
    for name in table.columns:
        values = table.column_values(name)
        nulls = sum(1 for v in values if v is None)
        null_fraction = nulls / len(values) if values else 0.0
        non_null = [v for v in values if v is not None]
        distinct = len(set(non_null))
        if not non_null:
            profiles.append(
                ColumnProfile(
                    name=name,
                    inferred_type=None,
                    null_fraction=null_fraction,
                    distinct_count=0,
                    note="all values null; type unknown",
                )
            )
            continue
        kind = infer_type(values, row_count=table.row_count)
        if kind == "Numerical":
            acc = _MomentAccumulator()
            for v in non_null:
                acc.add(float(v))
            accumulators[name] = acc
            numeric_columns.append(name)
            profiles.append(
                ColumnProfile(
                    name=name,
                    inferred_type=kind,
                    null_fraction=null_fraction,
                    distinct_count=distinct,
                    mean=acc.mean,
                    standard_deviation=acc.std,
                    min=acc.min,
                    max=acc.max,
                    normality=normality([float(v) for v in non_null]),
                )
            )
        else:
            profiles.append(
                ColumnProfile(
                    name=name,
                    inferred_type=kind,
                    null_fraction=null_fraction,
                    distinct_count=distinct,
                )
            )

    fractions, missing_level = missing_stats(table)
    data_types = frozenset(p.inferred_type for p in profiles if p.inferred_type)
    scales = scale_homogeneity([accumulators[c].std for c in numeric_columns])

    class_balance: Optional[bool] = None
    if label_column is not None:
        counts: dict[str, int] = {}
        for v in table.column_values(label_column):
            if v is not None:
                counts[v] = counts.get(v, 0) + 1
        if counts:
            class_balance = max(counts.values()) / min(counts.values()) <= CLASS_BALANCE_RATIO_LIMIT

    normal_columns = [p.normality for p in profiles if p.inferred_type == "Numerical"]
    distribution = (
        "Normal"
        if normal_columns and all(n == "Normal" for n in normal_columns)
        else "Unknown"
    )

    correlated: list[tuple[str, str, float]] = []
    if flag_correlations and len(numeric_columns) >= 2:
        correlated = _correlated_pairs(table, numeric_columns)

    footprint = sum(
        len(cell) for row in table.rows for cell in row if cell is not None
    )
    return ProfileReport(
        row_count=table.row_count,
        columns=tuple(profiles),
        volume_bucket=volume_bucket(table.row_count),
        missing_level=missing_level,
        data_types=data_types,
        scales_similar=scales,
        class_balance_ok=class_balance,
        distribution=distribution,
        correlated_pairs=tuple(correlated),
        memory_footprint_bytes=footprint,
    )


def _correlated_pairs(table: RawTable, numeric_columns: list[str]):
    """Pairwise Pearson correlation via streaming co-moment sums."""
    idx = {c: table.columns.index(c) for c in numeric_columns}
    pairs = [
        (a, b)
        for i, a in enumerate(numeric_columns)
        for b in numeric_columns[i + 1 :]
    ]
    sums = {p: [0, 0.0, 0.0, 0.0, 0.0, 0.0] for p in pairs}  # n, sx, sy, sxx, syy, sxy
    for row in table.rows:
        for a, b in pairs:
            ca, cb = row[idx[a]], row[idx[b]]
            if ca is None or cb is None:
                continue
            x, y = float(ca), float(cb)
            s = sums[(a, b)]
            s[0] += 1
            s[1] += x
            s[2] += y
            s[3] += x * x
            s[4] += y * y
            s[5] += x * y
    flagged = []
    for (a, b), (n, sx, sy, sxx, syy, sxy) in sums.items():
        if n < 2:
            continue
        var_x = sxx - sx * sx / n
        var_y = syy - sy * sy / n
        if var_x <= 0.0 or var_y <= 0.0:
            continue
        r = (sxy - sx * sy / n) / math.sqrt(var_x * var_y)
        if abs(r) >= CORRELATION_FLAG_THRESHOLD:
            flagged.append((a, b, r))
    return flagged


# ---------------------------------------------------------------------------
# Report serialization (matches the project file vocabulary)
# ---------------------------------------------------------------------------

def report_to_doc(report: ProfileReport) -> dict:
    return {
        "rowCount": report.row_count,
        "volumeBucket": report.volume_bucket,
        "missingLevel": report.missing_level,
        "dataTypes": sorted(report.data_types),
        "scalesSimilar": report.scales_similar,
        "classBalanceOk": report.class_balance_ok,
        "distribution": report.distribution,
        "memoryFootprintBytes": report.memory_footprint_bytes,
        "correlatedPairs": [
            {"a": a, "b": b, "r": round(r, 6)} for a, b, r in report.correlated_pairs
        ],
        "columns": [
            {
                "name": c.name,
                "inferredType": c.inferred_type,
                "nullFraction": round(c.null_fraction, 6),
                "distinctCount": c.distinct_count,
                **(
                    {
                        "mean": round(c.mean, 6),
                        "standardDeviation": round(c.standard_deviation, 6),
                        "min": c.min,
                        "max": c.max,
                        "normality": c.normality,
                    }
                    if c.inferred_type == "Numerical"
                    else {}
                ),
                **({"note": c.note} if c.note else {}),
            }
            for c in report.columns
        ],
    }


def report_from_doc(doc: dict) -> ProfileReport:
    columns = tuple(
        ColumnProfile(
            name=c["name"],
            inferred_type=c.get("inferredType"),
            null_fraction=float(c.get("nullFraction", 0.0)),
            distinct_count=int(c.get("distinctCount", 0)),
            mean=c.get("mean"),
            standard_deviation=c.get("standardDeviation"),
            min=c.get("min"),
            max=c.get("max"),
            normality=c.get("normality"),
            note=c.get("note", ""),
        )
        for c in doc.get("columns", [])
    )
    return ProfileReport(
        row_count=int(doc["rowCount"]),
        columns=columns,
        volume_bucket=doc["volumeBucket"],
        missing_level=doc["missingLevel"],
        data_types=frozenset(doc.get("dataTypes", [])),
        scales_similar=bool(doc["scalesSimilar"]),
        class_balance_ok=doc.get("classBalanceOk"),
        distribution=doc["distribution"],
        correlated_pairs=tuple(
            (p["a"], p["b"], float(p["r"])) for p in doc.get("correlatedPairs", [])
        ),
        memory_footprint_bytes=int(doc.get("memoryFootprintBytes", 0)),
    )
