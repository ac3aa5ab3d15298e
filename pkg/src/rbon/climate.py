"""Monthly climate CSV ingestion and year-over-year forecasting datasets.

Each calendar year becomes one function of the month index t in {1..12}:
the CO2 curve of year n is the branch input, and the temperature in month
t of the same year is the target. Years with any missing or absent month
are dropped rather than imputed. The most recent years form the test
split, so evaluation is a true forward holdout.

The repository ships small synthetic surrogate fixtures that follow the
layouts of the public Scripps CO2 and monthly-temperature sources; see
data/climate/MANIFEST.json for how they were generated.
"""

import os
from dataclasses import dataclass
from importlib import resources
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .model import TrainingSet

MISSING_SENTINEL = "-99.99"


@dataclass(frozen=True)
class MonthlySeries:
    """Parsed monthly records plus the (year, month) slots marked missing."""

    records: Tuple[Tuple[int, int, float], ...]
    missing: Tuple[Tuple[int, int], ...] = ()
    source_label: str = ""

    def __post_init__(self):
        seen = set()
        for year, month, value in self.records:
            if not 1 <= month <= 12:
                raise ValueError(f"month {month} out of range for year {year}")
            if (year, month) in seen:
                raise ValueError(f"duplicate record for {year}-{month:02d}")
            seen.add((year, month))
            if not np.isfinite(value):
                raise ValueError(f"non-finite value for {year}-{month:02d}")
        for year, month in self.missing:
            if not 1 <= month <= 12:
                raise ValueError(f"month {month} out of range for year {year}")
            if (year, month) in seen:
                raise ValueError(f"{year}-{month:02d} is both recorded and missing")
            seen.add((year, month))


@dataclass(frozen=True)
class YearFunction:
    """One year's 12 monthly samples, indexed by month 1..12."""

    year: int
    samples: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        if samples.shape != (12,):
            raise ValueError(f"expected 12 monthly samples, got shape {samples.shape}")
        if not np.all(np.isfinite(samples)):
            raise ValueError(f"year {self.year} has non-finite samples")
        object.__setattr__(self, "samples", samples)


@dataclass(frozen=True)
class CsvSchema:
    """Column positions and lexical conventions of one CSV layout."""

    year_column: int
    month_column: int
    value_column: int
    delimiter: str = ","
    comment_prefixes: Tuple[str, ...] = ("#",)
    missing_markers: Tuple[str, ...] = (MISSING_SENTINEL,)
    header_rows: int = 1
    max_malformed: int = 0
    label: str = "monthly csv"


def simple_monthly_schema() -> CsvSchema:
    """Plain (year, month, value) layout with a single header row."""
    return CsvSchema(year_column=0, month_column=1, value_column=2)


def scripps_co2_schema() -> CsvSchema:
    """Scripps-style CO2 layout: quoted comment block, Yr/Mn/Date/CO2 columns."""
    return CsvSchema(
        year_column=0,
        month_column=1,
        value_column=3,
        comment_prefixes=('"', "%"),
        missing_markers=(MISSING_SENTINEL, "NaN"),
        header_rows=1,
        label="co2 monthly",
    )


def _open_source(source):
    if hasattr(source, "read"):
        return source, False
    if isinstance(source, (str, os.PathLike)):
        return open(source, "r", encoding="utf-8"), True
    # importlib.resources traversables and similar path objects
    return source.open("r"), True


def parse_monthly_csv(
    source,
    schema: CsvSchema,
    missing_markers: Optional[Sequence[str]] = None,
) -> MonthlySeries:
    """Read one monthly series; sentinel values become missing slots.

    Rows whose year or month fields do not parse are counted as malformed
    and tolerated up to schema.max_malformed; sentinel or non-numeric
    values are kept as missing (year, month) slots, never dropped
    silently. Duplicate (year, month) keys are always an error.
    """
    markers = tuple(missing_markers) if missing_markers is not None else schema.missing_markers
    needed = max(schema.year_column, schema.month_column, schema.value_column) + 1
    records: List[Tuple[int, int, float]] = []
    missing: List[Tuple[int, int]] = []
    malformed: List[int] = []
    seen = set()
    handle, owned = _open_source(source)
    try:
        data_rows = 0
        for lineno, line in enumerate(handle, start=1):
            text = line.strip()
            if not text or any(text.startswith(p) for p in schema.comment_prefixes):
                continue
            data_rows += 1
            if data_rows <= schema.header_rows:
                continue
            fields = [f.strip() for f in text.split(schema.delimiter)]
            if len(fields) < needed:
                malformed.append(lineno)
                continue
            try:
                year = int(fields[schema.year_column])
                month = int(fields[schema.month_column])
            except ValueError:
                malformed.append(lineno)
                continue
            if not 1 <= month <= 12:
                malformed.append(lineno)
                continue
            if (year, month) in seen:
                raise ValueError(f"line {lineno}: duplicate entry for {year}-{month:02d}")
            seen.add((year, month))
            raw = fields[schema.value_column]
            if raw in markers:
                missing.append((year, month))
                continue
            try:
                value = float(raw)
            except ValueError:
                missing.append((year, month))
                continue
            if not np.isfinite(value):
                missing.append((year, month))
                continue
            records.append((year, month, value))
    finally:
        if owned:
            handle.close()
    if len(malformed) > schema.max_malformed:
        head = ", ".join(str(n) for n in malformed[:5])
        raise ValueError(
            f"{len(malformed)} malformed rows (limit {schema.max_malformed}); "
            f"first line numbers: {head}"
        )
    return MonthlySeries(
        records=tuple(records), missing=tuple(missing), source_label=schema.label
    )


def write_monthly_csv(series: MonthlySeries, destination) -> None:
    """Emit a simple (year, month, value) CSV; missing slots get the sentinel.

    Rows are sorted by (year, month) and values are written in full float
    precision, so parsing the file back with simple_monthly_schema()
    reproduces a key-sorted series exactly.
    """
    rows = [(y, m, repr(float(v))) for y, m, v in series.records]
    rows += [(y, m, MISSING_SENTINEL) for y, m in series.missing]
    rows.sort(key=lambda r: (r[0], r[1]))
    lines = ["year,month,value"]
    lines += [f"{y},{m},{v}" for y, m, v in rows]
    text = "\n".join(lines) + "\n"
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", encoding="utf-8") as handle:
            handle.write(text)


def to_year_functions(series: MonthlySeries) -> List[YearFunction]:
    """Complete years only, ascending; a year with any gap is excluded."""
    by_year = {}
    for year, month, value in series.records:
        by_year.setdefault(year, {})[month] = value
    incomplete = {year for year, _ in series.missing}
    out = []
    for year in sorted(by_year):
        months = by_year[year]
        if year in incomplete or len(months) != 12:
            continue
        out.append(YearFunction(year=year, samples=[months[m] for m in range(1, 13)]))
    return out


def common_years(inputs: Sequence[YearFunction], targets: Sequence[YearFunction]) -> List[int]:
    """Years present in both series, ascending."""
    return sorted({f.year for f in inputs} & {f.year for f in targets})


MONTH_QUERIES = np.arange(1, 13, dtype=float)[:, None]


def build_forecast_dataset(
    inputs: Sequence[YearFunction],
    targets: Sequence[YearFunction],
    holdout_years: int,
) -> Tuple[TrainingSet, TrainingSet]:
    """Train/test split with the most recent holdout_years as the test set.

    Branch input: the 12 monthly input values of a year. Query: the month
    index as a 1-d location. Target: the output series' value in that
    month of the same year.
    """
    if holdout_years < 1:
        raise ValueError("holdout_years must be at least 1")
    years = common_years(inputs, targets)
    if len(years) < holdout_years + 2:
        raise ValueError(
            f"{len(years)} common years is too few for a {holdout_years}-year "
            "holdout; need at least holdout + 2"
        )
    input_by_year = {f.year: f.samples for f in inputs}
    target_by_year = {f.year: f.samples for f in targets}
    split = len(years) - holdout_years
    make = lambda ys: TrainingSet(
        inputs=np.vstack([input_by_year[y] for y in ys]),
        queries=MONTH_QUERIES,
        targets=np.vstack([target_by_year[y] for y in ys]),
    )
    return make(years[:split]), make(years[split:])


def fixture_path(name: str):
    """Path-like handle to a bundled climate data file."""
    return resources.files("rbon").joinpath("data", "climate", name)


def load_fixture(name: str, schema: Optional[CsvSchema] = None) -> MonthlySeries:
    """Parse one bundled fixture by file name."""
    if schema is None:
        schema = scripps_co2_schema() if name.startswith("co2") else simple_monthly_schema()
    return parse_monthly_csv(fixture_path(name), schema)
