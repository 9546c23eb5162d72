"""Verification reports and deterministic JSON/TSV rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

__all__ = ["Report", "jsonable", "dumps_json", "frac_str", "tsv_table"]


@dataclass
class Report:
    """Outcome of one verification: an overall flag plus per-item entries."""

    name: str
    ok: bool
    entries: list[dict] = field(default_factory=list)
    applicable: bool = True
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"check": self.name, "ok": self.ok, "applicable": self.applicable, "entries": self.entries}
        if self.notes:
            out["notes"] = self.notes
        return out


def frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def jsonable(obj):
    """Recursively convert reports, fractions and tuples into plain JSON values."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, float):
        return obj
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return str(obj)


def dumps_json(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=True) + "\n"


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    if isinstance(v, Fraction):
        return frac_str(v)
    if isinstance(v, (list, tuple)):
        return ",".join(_cell(x) for x in v)
    return str(v)


def tsv_table(columns, rows) -> str:
    lines = ["\t".join(columns)]
    lines.extend("\t".join(_cell(row.get(c)) for c in columns) for row in rows)
    return "\n".join(lines) + "\n"
