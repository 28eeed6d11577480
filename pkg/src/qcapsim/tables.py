"""Deterministic CSV/JSON table emission.

Numbers are serialized with 12 significant digits so that golden-file
comparisons are byte-stable across runs; data files never carry
timestamps (run metadata goes to a sidecar written by the CLI).
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence


def format_sig(value) -> str:
    """Format a number with 12 significant digits."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int,)) and not isinstance(value, bool):
        return str(value)
    return f"{float(value):.12g}"


def _round_sig(value):
    """Round a float to 12 significant digits (used for JSON payloads)."""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return value
    if isinstance(value, int):
        return value
    return float(f"{value:.12g}")


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    """Render a CSV table with \\n line endings and 12-digit numbers."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, str) else format_sig(v) for v in row])
    return buf.getvalue()


def _walk_round(obj):
    if isinstance(obj, dict):
        return {k: _walk_round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_walk_round(v) for v in obj]
    return _round_sig(obj)


def json_text(payload) -> str:
    """Render JSON with floats rounded to 12 significant digits."""
    return json.dumps(_walk_round(payload), indent=2) + "\n"
