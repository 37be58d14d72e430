"""
analysis/report_writer.py

The single writer for every suite: one CSV file per table and a plain-text
summary with pass/fail counts, first failures and run metadata.
"""

import csv
import logging
import os

from config import SUMMARY_TXT
from src.core.errors import ConfigError

MAX_LISTED_FAILURES = 5


def prepare_output_dir(out_dir):
    """
    Create the run directory (parents included) for tables and the summary.

    Raises:
        ConfigError: when out_dir exists but is not a directory
    """
    if os.path.exists(out_dir) and not os.path.isdir(out_dir):
        raise ConfigError(f"output path {out_dir} exists and is not a directory")
    if not os.path.isdir(out_dir):
        os.makedirs(out_dir, exist_ok=True)
        logging.info(f"Created output directory {out_dir}")
    return out_dir


def _format(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return value


def write_table(path, header, rows):
    """Write one CSV table with a header row."""
    with open(path, mode="w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        writer.writerows([_format(value) for value in row] for row in rows)


def summary_lines(result):
    """Plain-text summary of a SuiteResult."""
    failed = [report for report in result.reports if not report.passed]
    lines = [
        f"command: {result.command}",
        f"suites: {len(result.reports)} run, {len(result.reports) - len(failed)} passed, {len(failed)} failed",
        f"status: {'PASS' if result.passed else 'FAIL'}",
        "",
    ]
    lines.extend(report.summary_line() for report in result.reports)
    if failed:
        lines.append("")
        lines.append("first failures:")
        for report in failed:
            for message in report.failures[:MAX_LISTED_FAILURES]:
                lines.append(f"  {report.name}: {message}")
    if result.metadata:
        lines.append("")
        lines.append("metadata:")
        lines.extend(f"  {line}" for line in result.metadata)
    return lines


def write_results(result, out_dir):
    """
    Write every table and the summary into out_dir.

    Args:
        result: SuiteResult from a suite runner
        out_dir: Output directory (created when missing)

    Returns:
        list of written paths
    """
    prepare_output_dir(out_dir)
    written = []
    for filename in sorted(result.tables):
        header, rows = result.tables[filename]
        path = os.path.join(out_dir, filename)
        write_table(path, header, rows)
        written.append(path)
    summary_path = os.path.join(out_dir, SUMMARY_TXT)
    with open(summary_path, mode="w") as f:
        f.write("\n".join(summary_lines(result)) + "\n")
    written.append(summary_path)
    logging.info(f"Wrote {len(written)} files to {out_dir}")
    return written
