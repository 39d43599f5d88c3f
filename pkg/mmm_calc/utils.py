#!/usr/bin/env python3
"""
Utility functions for mmm_calc
Output helpers shared by the CLI renderers
"""

import csv
import io
import json
import logging
from typing import Any, Iterable, Sequence

logger = logging.getLogger(__name__)


def format_duration(seconds: float) -> str:
    """
    Format duration in human-readable format

    Args:
        seconds: Duration in seconds

    Returns:
        Formatted duration string
    """
    if seconds < 1:
        return f"{seconds * 1000:.1f}ms"
    elif seconds < 60:
        return f"{seconds:.2f}s"
    else:
        minutes = int(seconds // 60)
        return f"{minutes}m {seconds - 60 * minutes:.0f}s"


def render_json(payload: Any) -> str:
    """Compact JSON; key order is the insertion order of payload"""
    return json.dumps(payload, separators=(',', ':'))


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue().rstrip('\n')
