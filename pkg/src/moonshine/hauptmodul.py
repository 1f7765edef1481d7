"""Normalized McKay-Thompson series built from j and eta quotients.

The class table lives in ``data/mckay_thompson.json``.  Each entry names a
construction:

``j``
    j(tau) itself.
``eta_quotient``
    the eta quotient ``f`` given by ``{scale: power}``.
``eta_quotient_plus``
    ``f + C / f`` for the eta quotient ``f`` and the constant ``plus_constant``.

Whatever the construction, the result is passed through :func:`normalize`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .modular import eta_quotient, j_series
from .series import LaurentSeries, invert

__all__ = ["McKayThompsonSeries", "class_table", "mckay_thompson", "normalize"]


@dataclass(frozen=True)
class McKayThompsonSeries:
    class_label: str
    expansion: LaurentSeries
    group_description: str

    def __post_init__(self) -> None:
        e = self.expansion
        if e.leading_exponent() != -1 or e.coefficient_at(-1) != 1 or e.coefficient_at(0) != 0:
            raise ValueError(f"T_{self.class_label} must start q^-1 + 0 + O(q), got {e}")


def normalize(series: LaurentSeries) -> LaurentSeries:
    """Scale the q^-1 coefficient to +1 and drop the constant term."""
    if series.leading_exponent() != -1:
        raise ValueError(f"a Hauptmodul expansion must start at q^-1, got {series}")
    lead = series.coefficient_at(-1)
    if lead not in (1, -1):
        raise ValueError(f"leading coefficient {lead} is not +1 or -1")
    if lead == -1:
        series = -series
    if series.order <= 0:
        return series
    return series.with_coefficient(0, 0)


@lru_cache(maxsize=None)
def _bundled_table() -> dict:
    text = resources.files("moonshine").joinpath("data/mckay_thompson.json").read_text()
    return json.loads(text)


def class_table(path: str | Path | None = None) -> dict:
    """Class label -> construction record.  ``path`` overrides the bundled table."""
    if path is None:
        return dict(_bundled_table())
    return json.loads(Path(path).read_text())


def _construct(entry: dict, order: int) -> LaurentSeries:
    kind = entry["construction"]
    if kind == "j":
        return j_series(order)
    powers = {int(d): int(r) for d, r in entry["eta_quotient"].items()}
    f = eta_quotient(powers, order)
    if kind == "eta_quotient":
        return f
    if kind == "eta_quotient_plus":
        return f + invert(f).scale(int(entry["plus_constant"]))
    raise ValueError(f"unknown construction {kind!r}")


def mckay_thompson(label: str, order: int, table: dict | None = None) -> McKayThompsonSeries:
    """T_label known below q^order (order >= 1 so the constant term is tracked)."""
    table = class_table() if table is None else table
    if label not in table:
        raise ValueError(f"unknown class label {label!r}; known: {', '.join(sorted(table))}")
    if order < 1:
        raise ValueError("order must be at least 1")
    entry = table[label]
    expansion = normalize(_construct(entry, order)).truncate(order)
    return McKayThompsonSeries(label, expansion, entry.get("group_description", ""))
