"""Deterministic CSV emission for sweep results.

Layout: '# key,value' header lines, a '# ' prefixed per-outcome table, then
the column line and one line per sigma point. Numbers use 12 significant
digits; optional columns are left empty when not computed.
"""

from typing import Dict, Iterable, List, Optional
import csv
import io

from ..config import CSV_DIGITS
from .sweep import ResultRow, SweepHeader

COLUMNS = [
    "sigma",
    "x_no_feedback",
    "x_feedback",
    "x_feedback_joint",
    "residual",
    "predicted_residual",
    "variance_model",
    "mc_mean",
    "mc_stderr",
]

OUTCOME_COLUMNS = [
    "outcome",
    "probability",
    "estimate",
    "weak_value_real",
    "weak_value_imag",
    "contribution",
    "degenerate",
    "anomalous",
]


def format_number(value: Optional[float]) -> str:
    if value is None:
        return ""
    value = float(value)
    if value == 0.0:
        # Avoid "-0"
        return "0"
    return f"{value:.{CSV_DIGITS}g}"


def _header_lines(header: SweepHeader) -> List[List[str]]:
    lines = [
        ["scenario", header.name],
        ["dimension", str(header.dimension)],
        ["strategy", header.strategy.value],
        ["epsilon_squared", format_number(header.epsilon_squared)],
        ["variance", format_number(header.variance)],
        ["mean", format_number(header.mean)],
        OUTCOME_COLUMNS,
    ]
    for entry in header.weak_values.entries:
        lines.append([
            str(entry.label),
            format_number(entry.probability),
            format_number(header.estimates[entry.label]),
            format_number(entry.real),
            format_number(entry.imag),
            format_number(header.uncertainty.contributions[entry.label]),
            str(entry.degenerate).lower(),
            str(entry.anomalous).lower(),
        ])
    return lines


def _row_fields(row: ResultRow) -> List[str]:
    return [format_number(getattr(row, column)) for column in COLUMNS]


def emit_csv(rows: Iterable[ResultRow], header: SweepHeader) -> str:
    """Render the header block, the column line and the rows as CSV text"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    for fields in _header_lines(header):
        writer.writerow([f"# {fields[0]}", *fields[1:]])
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow(_row_fields(row))
    return buffer.getvalue()


def read_columns(text: str) -> List[Dict[str, str]]:
    """Parse emitted CSV back into column dicts, skipping the header block"""
    body = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(body))
