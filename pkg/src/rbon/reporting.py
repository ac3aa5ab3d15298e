"""Report formatting: mean(MOE) cells, CSV exports, aligned text tables."""

from collections import Counter
from typing import Sequence

from .harness import ForecastResult, TableRow, VARIANT_LABELS
from .metrics import ErrorSummary


def format_scientific(value: float) -> str:
    """One-decimal scientific notation without exponent zero padding: 9.4E-4."""
    mantissa, exponent = f"{value:.1E}".split("E")
    return f"{mantissa}E{int(exponent)}"


def format_mean_moe(summary: ErrorSummary) -> str:
    """Error cell in mean(margin-of-error) form, e.g. 9.4E-4(4.9E-5)."""
    return f"{format_scientific(summary.mean_error)}({format_scientific(summary.margin_of_error)})"


def _modal_size(row: TableRow) -> str:
    sizes = Counter((c.branch_units, c.trunk_units) for c in row.cells)
    branch, trunk = sizes.most_common(1)[0][0]
    return f"{branch}x{trunk}"


def benchmark_table_csv(rows: Sequence[TableRow]) -> str:
    """Machine-readable benchmark table, one row per (family, variant) cell."""
    lines = [
        "family,variant,seeds,size,id_mean,id_moe,ood_mean,ood_moe,runtime_seconds"
    ]
    for row in rows:
        lines.append(
            ",".join(
                [
                    row.family,
                    VARIANT_LABELS[row.variant],
                    ";".join(str(s) for s in row.seeds),
                    _modal_size(row),
                    repr(row.id_summary.mean_error),
                    repr(row.id_summary.margin_of_error),
                    repr(row.ood_summary.mean_error),
                    repr(row.ood_summary.margin_of_error),
                    f"{row.runtime_seconds:.2f}",
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _render_aligned(header, body) -> str:
    widths = [
        max(len(str(line[i])) for line in [header] + body) for i in range(len(header))
    ]
    render = lambda line: "  ".join(str(v).ljust(w) for v, w in zip(line, widths)).rstrip()
    rule = "  ".join("-" * w for w in widths)
    return "\n".join([render(header), rule] + [render(line) for line in body]) + "\n"


def benchmark_table_text(rows: Sequence[TableRow]) -> str:
    """Human-readable benchmark table with mean(MOE) cells."""
    header = ["family", "variant", "size", "ID error", "OOD error", "runtime (s)"]
    body = [
        [
            row.family,
            VARIANT_LABELS[row.variant],
            _modal_size(row),
            format_mean_moe(row.id_summary),
            format_mean_moe(row.ood_summary),
            f"{row.runtime_seconds:.1f}",
        ]
        for row in rows
    ]
    return _render_aligned(header, body)


def forecast_report_csv(results: Sequence[ForecastResult], surrogate: bool) -> str:
    """Per-protocol climate error table."""
    lines = ["target,holdout_years,train_years,test_years,mean_error,data"]
    tag = "surrogate" if surrogate else "real"
    for r in results:
        lines.append(
            ",".join(
                [
                    r.target,
                    str(r.holdout_years),
                    str(len(r.train_years)),
                    ";".join(str(y) for y in r.test_years),
                    repr(r.mean_error),
                    tag,
                ]
            )
        )
    return "\n".join(lines) + "\n"


def forecast_report_text(results: Sequence[ForecastResult], surrogate: bool) -> str:
    header = ["target", "holdout", "train yrs", "test years", "rel. L2 error", "data"]
    tag = "surrogate" if surrogate else "real"
    body = [
        [
            r.target,
            f"{r.holdout_years}y",
            str(len(r.train_years)),
            ";".join(str(y) for y in r.test_years),
            format_scientific(r.mean_error),
            tag,
        ]
        for r in results
    ]
    return _render_aligned(header, body)


def forecast_rows_csv(result: ForecastResult) -> str:
    """Month-level (year, month, actual, predicted, split) rows for plotting."""
    lines = ["year,month,actual,predicted,split"]
    blocks = [
        (result.train_years, result.train_actuals, result.train_predictions, "train"),
        (result.test_years, result.actuals, result.predictions, "forecast"),
    ]
    for years, actuals, predictions, tag in blocks:
        for row, year in enumerate(years):
            for month in range(12):
                lines.append(
                    f"{year},{month + 1},{actuals[row, month]!r},"
                    f"{predictions[row, month]!r},{tag}"
                )
    return "\n".join(lines) + "\n"
