"""Criteria catalog and the reliance x contestability-level matrix.

Twenty-one criteria sit in five thematic clusters, each tagged with one or
more dimensions (human_centered, technical, legal, organizational).  A 3x3
matrix maps (AI reliance, contestability level) to required clusters with
illustrative examples; requirements are cumulative within a reliance row
and never cascade across rows.  The whole catalog ships as editable JSON
data, including the cell-to-cluster mapping, which is an interpretation of
the source material rather than an enumerated table.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from contestkit.errors import InputError
from contestkit.jsonio import as_fraction, check_schema_version

RELIANCE_VALUES = ("low", "medium", "high")
LEVEL_VALUES = ("low", "medium", "high")
DIMENSIONS = ("human_centered", "technical", "legal", "organizational")

DEFAULT_THRESHOLDS = (Fraction(1, 3), Fraction(2, 3))


@dataclass(frozen=True)
class Cluster:
    id: str
    name: str
    summary: str


@dataclass(frozen=True)
class Criterion:
    id: str
    name: str
    cluster: str
    dimensions: tuple[str, ...]
    description: str


@dataclass(frozen=True)
class TaxonomyCell:
    reliance: str
    level: str
    cluster_ids: tuple[str, ...]
    criteria_ids: tuple[str, ...]
    examples: tuple[str, ...]
    flags: frozenset[str]


@dataclass(frozen=True)
class Classification:
    reliance: str
    level: str
    cell: TaxonomyCell
    flags: frozenset[str]


class TaxonomyCatalog:
    """Immutable criteria catalog plus the 9-cell requirement matrix."""

    def __init__(
        self,
        clusters: tuple[Cluster, ...],
        criteria: tuple[Criterion, ...],
        cells: dict[tuple[str, str], TaxonomyCell],
    ):
        self.clusters = clusters
        self.criteria = criteria
        self.cells = cells
        self._cluster_index = {cluster.id: i for i, cluster in enumerate(clusters)}
        self._criterion_index = {crit.id: i for i, crit in enumerate(criteria)}
        self._by_id = {crit.id: crit for crit in criteria}

    def criterion(self, criterion_id: str) -> Criterion:
        if criterion_id not in self._by_id:
            raise InputError(f"unknown criterion {criterion_id!r}")
        return self._by_id[criterion_id]

    def cell(self, reliance: str, level: str) -> TaxonomyCell:
        _check_enums(reliance, level)
        return self.cells[(reliance, level)]

    def sort_key(self, criterion: Criterion) -> tuple[int, int]:
        return (
            self._cluster_index[criterion.cluster],
            self._criterion_index[criterion.id],
        )

    def criteria_of_clusters(self, cluster_ids: tuple[str, ...]) -> tuple[str, ...]:
        wanted = set(cluster_ids)
        ordered = sorted(
            (crit for crit in self.criteria if crit.cluster in wanted),
            key=self.sort_key,
        )
        return tuple(crit.id for crit in ordered)


def _check_enums(reliance: str, level: str) -> None:
    if reliance not in RELIANCE_VALUES:
        raise InputError(
            f"reliance must be one of {', '.join(RELIANCE_VALUES)}; got {reliance!r}",
            "reliance",
        )
    if level not in LEVEL_VALUES:
        raise InputError(
            f"level must be one of {', '.join(LEVEL_VALUES)}; got {level!r}",
            "level",
        )


def catalog_from_json(doc: object, source: str = "taxonomy data") -> TaxonomyCatalog:
    body = check_schema_version(doc, source)

    clusters = tuple(
        Cluster(c["id"], c["name"], c.get("summary", "")) for c in body["clusters"]
    )
    cluster_ids = {cluster.id for cluster in clusters}

    criteria: list[Criterion] = []
    for item in body["criteria"]:
        if item["cluster"] not in cluster_ids:
            raise InputError(
                f"criterion {item['id']!r} references unknown cluster "
                f"{item['cluster']!r}",
                "criteria",
            )
        dimensions = tuple(item["dimensions"])
        if not dimensions:
            raise InputError(
                f"criterion {item['id']!r} must have at least one dimension",
                "criteria",
            )
        for dimension in dimensions:
            if dimension not in DIMENSIONS:
                raise InputError(
                    f"criterion {item['id']!r} has unknown dimension {dimension!r}",
                    "criteria",
                )
        criteria.append(
            Criterion(
                item["id"], item["name"], item["cluster"], dimensions,
                item.get("description", ""),
            )
        )
    ids = [crit.id for crit in criteria]
    if len(ids) != len(set(ids)):
        raise InputError("duplicate criterion ids in catalog", "criteria")

    partial = TaxonomyCatalog(clusters, tuple(criteria), {})

    cells: dict[tuple[str, str], TaxonomyCell] = {}
    for item in body["cells"]:
        reliance, level = item["reliance"], item["level"]
        _check_enums(reliance, level)
        cell_clusters = tuple(item["clusters"])
        for cluster_id in cell_clusters:
            if cluster_id not in cluster_ids:
                raise InputError(
                    f"cell ({reliance}, {level}) references unknown cluster "
                    f"{cluster_id!r}",
                    "cells",
                )
        cells[(reliance, level)] = TaxonomyCell(
            reliance=reliance,
            level=level,
            cluster_ids=cell_clusters,
            criteria_ids=partial.criteria_of_clusters(cell_clusters),
            examples=tuple(item.get("examples", ())),
            flags=frozenset(item.get("flags", ())),
        )
    missing = [
        (r, l)
        for r in RELIANCE_VALUES
        for l in LEVEL_VALUES
        if (r, l) not in cells
    ]
    if missing:
        raise InputError(f"matrix is missing cells: {missing}", "cells")

    return TaxonomyCatalog(clusters, tuple(criteria), cells)


_CATALOG: TaxonomyCatalog | None = None


def default_catalog() -> TaxonomyCatalog:
    global _CATALOG
    if _CATALOG is None:
        text = (
            resources.files("contestkit.data")
            .joinpath("taxonomy.json")
            .read_text(encoding="utf-8")
        )
        _CATALOG = catalog_from_json(json.loads(text))
    return _CATALOG


# ---- queries ----


def resolve_requirements(
    reliance: str, level: str, catalog: TaxonomyCatalog | None = None
) -> list[Criterion]:
    """Cumulative criteria for a cell: its own plus all lower levels in the
    same reliance row, ordered by cluster then catalog position.  Rows never
    mix: a low-reliance query never pulls criteria from other rows."""
    catalog = catalog or default_catalog()
    _check_enums(reliance, level)
    wanted: set[str] = set()
    for lower in LEVEL_VALUES[: LEVEL_VALUES.index(level) + 1]:
        wanted.update(catalog.cells[(reliance, lower)].criteria_ids)
    ordered = sorted(
        (catalog.criterion(cid) for cid in wanted), key=catalog.sort_key
    )
    return list(ordered)


def classify(
    reliance: str,
    cas_total=None,
    level_override: str | None = None,
    thresholds: tuple = DEFAULT_THRESHOLDS,
    catalog: TaxonomyCatalog | None = None,
) -> Classification:
    """Place a system in the matrix from its score or an explicit level.

    Levels use half-open intervals: low is [0, t1), medium [t1, t2), high
    [t2, 1].  An explicit override wins over the score.
    """
    catalog = catalog or default_catalog()
    if reliance not in RELIANCE_VALUES:
        raise InputError(
            f"reliance must be one of {', '.join(RELIANCE_VALUES)}; got {reliance!r}",
            "reliance",
        )

    if level_override is not None:
        if level_override not in LEVEL_VALUES:
            raise InputError(
                f"level override must be one of {', '.join(LEVEL_VALUES)}; got "
                f"{level_override!r}",
                "level",
            )
        level = level_override
    else:
        if cas_total is None:
            raise InputError(
                "classification needs either a score or a level override",
                "cas_total",
            )
        total = as_fraction(cas_total, "cas_total")
        if not 0 <= total <= 1:
            raise InputError(
                f"cas_total must lie in [0, 1], got {float(total)!r}", "cas_total"
            )
        t1 = as_fraction(thresholds[0], "thresholds")
        t2 = as_fraction(thresholds[1], "thresholds")
        if not (0 < t1 < t2 < 1):
            raise InputError(
                "thresholds must satisfy 0 < t1 < t2 < 1", "thresholds"
            )
        if total < t1:
            level = "low"
        elif total < t2:
            level = "medium"
        else:
            level = "high"

    cell = catalog.cells[(reliance, level)]
    return Classification(reliance, level, cell, cell.flags)


def criteria_by_dimension(
    dimension: str, catalog: TaxonomyCatalog | None = None
) -> list[Criterion]:
    """All criteria tagged with the dimension, in stable cluster order."""
    catalog = catalog or default_catalog()
    if dimension not in DIMENSIONS:
        raise InputError(
            f"dimension must be one of {', '.join(DIMENSIONS)}; got {dimension!r}",
            "dimension",
        )
    matches = [crit for crit in catalog.criteria if dimension in crit.dimensions]
    return sorted(matches, key=catalog.sort_key)


# ---- renderings ----


def matrix_grid_text(catalog: TaxonomyCatalog | None = None) -> str:
    """Plain-text 3x3 grid: required clusters and flags per cell."""
    catalog = catalog or default_catalog()
    cluster_names = {cluster.id: cluster.name for cluster in catalog.clusters}
    lines = []
    header = "reliance \\ level"
    width = max(len(header), max(len(r) for r in RELIANCE_VALUES)) + 2
    lines.append(header.ljust(width) + " | " + " | ".join(l.center(28) for l in LEVEL_VALUES))
    lines.append("-" * len(lines[0]))
    for reliance in RELIANCE_VALUES:
        row_cells = []
        for level in LEVEL_VALUES:
            cell = catalog.cells[(reliance, level)]
            short = ", ".join(
                "".join(word[0] for word in cluster_names[cid].split()[:3]).upper()
                for cid in cell.cluster_ids
            )
            if cell.flags:
                short += " [" + ",".join(sorted(cell.flags)) + "]"
            row_cells.append(short.center(28))
        lines.append(reliance.ljust(width) + " | " + " | ".join(row_cells))
    lines.append("")
    lines.append("Cluster key:")
    for cluster in catalog.clusters:
        initials = "".join(word[0] for word in cluster.name.split()[:3]).upper()
        lines.append(f"  {initials}: {cluster.name}")
    return "\n".join(lines) + "\n"


def matrix_csv(catalog: TaxonomyCatalog | None = None) -> str:
    """CSV export: one row per cell with clusters, criteria, examples, flags."""
    catalog = catalog or default_catalog()
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["reliance", "level", "clusters", "criteria", "examples", "flags"])
    for reliance in RELIANCE_VALUES:
        for level in LEVEL_VALUES:
            cell = catalog.cells[(reliance, level)]
            writer.writerow(
                [
                    reliance,
                    level,
                    "; ".join(cell.cluster_ids),
                    "; ".join(cell.criteria_ids),
                    "; ".join(cell.examples),
                    "; ".join(sorted(cell.flags)),
                ]
            )
    return buffer.getvalue()
