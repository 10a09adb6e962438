"""Delimited and JSON serialization of per-frequency result tables."""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = ["SpectrumTable", "format_float"]


def format_float(x: float) -> str:
    """17 significant digits, scientific notation; round-trips doubles."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.16e}"


def _json_value(x):
    if isinstance(x, str):
        return x
    x = float(x)
    return x if math.isfinite(x) else None


@dataclass
class SpectrumTable:
    """Column-ordered table; the first column may hold string labels."""

    columns: list[str]
    rows: list[list] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def extend(self, label: str, data: dict[str, np.ndarray]) -> None:
        """Append one curve's rows; ``data`` must cover every non-label column."""
        numeric = [c for c in self.columns if c != "curve"]
        arrays = [np.asarray(data[c], dtype=float) for c in numeric]
        n = len(arrays[0])
        for i in range(n):
            row = [label] if self.columns[0] == "curve" else []
            row.extend(a[i] for a in arrays)
            self.rows.append(row)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(
                ",".join(v if isinstance(v, str) else format_float(v) for v in row)
                + "\n"
            )
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "meta": self.meta,
            "columns": self.columns,
            "rows": [[_json_value(v) for v in row] for row in self.rows],
        }
        return json.dumps(payload, indent=1, allow_nan=False) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")

    @staticmethod
    def read_csv(text: str) -> tuple[list[str], list[list]]:
        """Parse text written by :meth:`to_csv` back into header and rows."""
        lines = text.strip().splitlines()
        header = lines[0].split(",")
        rows = []
        for line in lines[1:]:
            fields = line.split(",")
            rows.append(
                [f if (h == "curve") else float(f) for h, f in zip(header, fields)]
            )
        return header, rows
