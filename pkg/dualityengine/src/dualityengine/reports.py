# reports.py
"""Render report dicts as line-oriented text or canonical JSON.

Both renderings are deterministic: key order follows insertion order in text
and sorted order in JSON, rationals print as p/q.
"""

from __future__ import annotations

import json
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List


def to_jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


def render_json(report: Dict[str, Any]) -> str:
    return json.dumps(to_jsonable(report), sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def _scalar(value: Any) -> str:
    value = to_jsonable(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    if isinstance(value, (list, dict)):
        return json.dumps(value, separators=(",", ":"), ensure_ascii=False)
    return str(value)


def _record_line(record: Dict[str, Any]) -> str:
    return " ".join(f"{k}={_scalar(v)}" for k, v in record.items())


def render_text(report: Dict[str, Any], title: str = "") -> str:
    lines: List[str] = [f"== {title} =="] if title else []
    for key, value in report.items():
        if key == "steps":
            continue
        if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{key}:")
            lines.extend(f"  {_record_line(v)}" for v in value)
        elif isinstance(value, dict):
            lines.append(f"{key}:")
            lines.extend(f"  {k}: {_scalar(v)}" for k, v in value.items())
        else:
            lines.append(f"{key}: {_scalar(value)}")
    steps = report.get("steps") or []
    if steps:
        lines.append("steps:")
        for step in steps:
            lines.append(f"  - {step['step']}: {_scalar(step.get('data', {}))}")
    return "\n".join(lines) + "\n"


def render(report: Dict[str, Any], fmt: str = "text", title: str = "") -> str:
    if fmt == "json":
        return render_json(report)
    return render_text(report, title)
