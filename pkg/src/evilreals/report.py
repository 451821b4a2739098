"""Experiment reports and their table / TSV / JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exact import decimal_of_width, truncated_decimal

FORMATS = ("table", "tsv", "json")


def exact_field(q: Fraction, width: int) -> dict[str, str]:
    """A rational as reduced fraction plus a truncated decimal ``width`` characters long."""
    q = Fraction(q)
    try:
        dec = decimal_of_width(q, width)
    except ValueError:
        dec = truncated_decimal(q, 1)
    return {"fraction": f"{q.numerator}/{q.denominator}", "decimal": dec}


@dataclass
class Report:
    experiment: str
    params: dict[str, Any]
    columns: list[str] = field(default_factory=list)
    rows: list[dict[str, Any]] = field(default_factory=list)
    aggregates: dict[str, Any] = field(default_factory=dict)
    meta: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {
            "experiment": self.experiment,
            "params": self.params,
            "columns": self.columns,
            "rows": self.rows,
            "aggregates": self.aggregates,
            "meta": self.meta,
        }
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"

    def to_tsv(self) -> str:
        lines = ["\t".join(self.columns)]
        for row in self.rows:
            lines.append("\t".join(_cell(row.get(c), "decimal") for c in self.columns))
        for key, val in self.aggregates.items():
            if isinstance(val, dict):
                for sub, v in val.items():
                    lines.append(f"# {key}.{sub}\t{v}")
            else:
                lines.append(f"# {key}\t{_cell(val, 'decimal')}")
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        out = [f"== {self.experiment} =="]
        out.append("  " + ", ".join(f"{k}={v}" for k, v in self.params.items()))
        if self.columns and self.rows:
            cells = [[_cell(r.get(c), "decimal") for c in self.columns] for r in self.rows]
            widths = [
                max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(self.columns)
            ]
            out.append("  ".join(c.ljust(w) for c, w in zip(self.columns, widths)))
            out.append("  ".join("-" * w for w in widths))
            for row in cells:
                out.append("  ".join(v.ljust(w) for v, w in zip(row, widths)))
        for key, val in self.aggregates.items():
            if isinstance(val, dict):
                for sub, v in val.items():
                    out.append(f"{key} ({sub}): {v}")
            else:
                out.append(f"{key}: {_cell(val, 'decimal')}")
        return "\n".join(out) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "tsv":
            return self.to_tsv()
        if fmt == "table":
            return self.to_table()
        raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")


def _cell(value, prefer: str) -> str:
    if value is None:
        return "-"
    if isinstance(value, dict):
        return str(value.get(prefer, next(iter(value.values()))))
    if isinstance(value, bool):
        return str(value).lower()
    return str(value)
