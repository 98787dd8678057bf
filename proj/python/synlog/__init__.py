"""Two-phase log template mining.

A syntax-based grouper clusters raw log lines, then an LCS-based refinement
stage anonymizes common variable shapes (IPs, paths, dates, durations,
memory sizes, numbers) and extracts one template per group.
"""

from synlog._core import (
    anonymize,
    evaluate,
    extract_variables,
    parse_lines,
    tokenize,
)

VARIABLE_MARKER = "<*>"

__all__ = [
    "VARIABLE_MARKER",
    "anonymize",
    "evaluate",
    "extract_variables",
    "parse_lines",
    "tokenize",
]
