"""Column-oriented result tables shared by the figure generators and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["FigureTable"]


@dataclass(frozen=True)
class FigureTable:
    """An immutable table with named columns plus run metadata.

    ``meta`` always records the parameters the table was produced with,
    including the chosen scale(s), so downstream consumers never have to
    guess the normalization context.
    """

    columns: tuple
    rows: tuple
    meta: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.asarray([row[i] for row in self.rows], dtype=float)

    def curves(self) -> dict:
        """Rows grouped by the ``curve_id`` column, insertion-ordered."""
        i = self.columns.index("curve_id")
        grouped: dict = {}
        for row in self.rows:
            grouped.setdefault(row[i], []).append(row)
        return grouped
