"""
Sweep CSV loading and saving.

A file holds "# noisygrover: key=value" config comments, a block of data rows
and a block of summary rows, each under its own header. Floats are written with
12 significant digits, so the same sweep always produces the same bytes.
"""

import logging

from .sweep import SOURCES, Row, Summary

# Version of the CSV layout
FORMAT_VERSION = "1.0"

CONFIG_PREFIX = "# noisygrover:"
DATA_HEADER = "channel,eta,t,p_analytic,p_oracle,abs_diff"
SUMMARY_HEADER = "channel,eta,t_m,p_max,source"

# Written where no closed form exists (amplitude damping)
MISSING = ""

log = logging.getLogger(__name__)


def format_float(value: float | None) -> str:
    if value is None:
        return MISSING
    return f"{value:.12g}"


def parse_float(text: str) -> float | None:
    text = text.strip()
    if text == MISSING:
        return None
    return float(text)


def load(file, rows: list[Row], summaries: list[Summary], config: dict[str, str]) -> None:
    """Load a sweep CSV from a file-like object, appending to the containers given."""
    section = None

    for line in file:
        line = line.strip()
        if not line:
            continue

        if line.startswith(CONFIG_PREFIX):
            key, value = line[len(CONFIG_PREFIX) :].strip().split("=", 1)
            config[key.strip()] = value.strip()
        elif line.startswith("#"):
            continue
        elif line == DATA_HEADER:
            section = rows
        elif line == SUMMARY_HEADER:
            section = summaries
        elif section is rows:
            rows.append(parse_row(line))
        elif section is summaries:
            summaries.append(parse_summary(line))
        else:
            raise ValueError(f"Data before any header: {line}")


def save(file, rows: list[Row], summaries: list[Summary], config: dict[str, str]) -> None:
    """Write a sweep CSV to a file-like object."""
    log.debug("Saving %d rows and %d summaries", len(rows), len(summaries))

    for key, val in sorted(config.items()):
        file.write(f"{CONFIG_PREFIX} {key}={val}\n")

    file.write(f"{DATA_HEADER}\n")
    for row in rows:
        file.write(format_row(row) + "\n")

    file.write(f"{SUMMARY_HEADER}\n")
    for summary in summaries:
        file.write(format_summary(summary) + "\n")


def format_row(row: Row) -> str:
    return ",".join(
        [
            row.channel,
            format_float(row.eta),
            str(row.t),
            format_float(row.p_analytic),
            format_float(row.p_oracle),
            format_float(row.abs_diff),
        ]
    )


def format_summary(summary: Summary) -> str:
    return f"{summary.channel},{format_float(summary.eta)},{summary.t_m},{format_float(summary.p_max)},{summary.source}"


def parse_row(line: str) -> Row:
    """Parse a data line into a Row."""
    parts = line.split(",")
    if len(parts) != 6:
        raise ValueError(f"Expected 6 fields, got {len(parts)} in line: {line}")
    channel, eta, t, p_analytic, p_oracle, abs_diff = parts
    return Row(channel, float(eta), int(t), parse_float(p_analytic), float(p_oracle), parse_float(abs_diff))


def parse_summary(line: str) -> Summary:
    """Parse a summary line into a Summary."""
    parts = line.split(",")
    if len(parts) != 5:
        raise ValueError(f"Expected 5 fields, got {len(parts)} in line: {line}")
    channel, eta, t_m, p_max, source = parts
    if source not in SOURCES:
        raise ValueError(f"Invalid source '{source}' in line: {line}")
    return Summary(channel, float(eta), int(t_m), float(p_max), source)
