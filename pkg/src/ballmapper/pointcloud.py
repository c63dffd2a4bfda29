"""Tabular point clouds: ingestion, column statistics, row filtering.

A cloud is a dense numeric matrix (rows x axes) with opaque row identifiers
and optional non-axis attribute columns (kept as raw strings so categorical
labels and numeric outcomes can share the same container).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import (
    AttributeTypeError,
    EmptyCloudError,
    UnknownColumnError,
)


@dataclass(frozen=True)
class PointCloud:
    row_ids: tuple[str, ...]
    axis_names: tuple[str, ...]
    values: np.ndarray
    attributes: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise ValueError("values must be a rows x axes matrix")
        if values.shape != (len(self.row_ids), len(self.axis_names)):
            raise ValueError("values shape does not match row_ids/axis_names")
        if not np.all(np.isfinite(values)):
            raise ValueError("cloud values must be finite (no missing cells)")
        if len(set(self.row_ids)) != len(self.row_ids):
            raise ValueError("row_ids must be unique")
        if len(set(self.axis_names)) != len(self.axis_names):
            raise ValueError("axis_names must be unique")
        if any(not name for name in self.axis_names):
            raise ValueError("axis_names must be non-empty")
        for name, column in self.attributes.items():
            if len(column) != len(self.row_ids):
                raise ValueError(f"attribute {name!r} not aligned to rows")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n_rows(self) -> int:
        return len(self.row_ids)

    @property
    def n_axes(self) -> int:
        return len(self.axis_names)

    def axis_index(self, name: str) -> int:
        try:
            return self.axis_names.index(name)
        except ValueError:
            raise UnknownColumnError(f"unknown axis {name!r}") from None

    def attribute(self, name: str) -> tuple[str, ...]:
        try:
            return self.attributes[name]
        except KeyError:
            raise UnknownColumnError(f"unknown attribute {name!r}") from None

    def numeric_attribute(self, name: str) -> np.ndarray:
        """Attribute parsed as float per row; raises if any cell is not numeric."""
        raw = self.attribute(name)
        out = np.empty(len(raw), dtype=np.float64)
        for i, cell in enumerate(raw):
            try:
                out[i] = float(cell)
            except (TypeError, ValueError):
                raise AttributeTypeError(
                    f"attribute {name!r} is not numeric at row {self.row_ids[i]!r}"
                ) from None
        if not np.all(np.isfinite(out)):
            raise AttributeTypeError(f"attribute {name!r} contains non-finite values")
        return out


@dataclass(frozen=True)
class AxisStats:
    axis_name: str
    mean: float
    sd: float
    min: float
    max: float


@dataclass(frozen=True)
class LoadReport:
    cloud: PointCloud
    dropped_rows: int


def _parse_cell(cell: str) -> float | None:
    cell = cell.strip()
    if not cell:
        return None
    try:
        value = float(cell)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def load_cloud(
    source: TextIO | str,
    axis_selector: Sequence[str],
    id_column: str,
    attribute_columns: Sequence[str] = (),
) -> LoadReport:
    """Read a delimited text stream into a complete cloud.

    Rows where any selected axis cell is empty or unparseable are dropped and
    counted; attribute columns are carried through as raw strings.  Input is
    comma-delimited UTF-8 with a header row; quoted fields are allowed.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyCloudError("input has no header row") from None
    header = [h.strip() for h in header]
    positions = {name: i for i, name in enumerate(header)}
    for name in [id_column, *axis_selector, *attribute_columns]:
        if name not in positions:
            raise UnknownColumnError(f"column {name!r} not in header")
    axis_pos = [positions[name] for name in axis_selector]
    attr_pos = [positions[name] for name in attribute_columns]
    id_pos = positions[id_column]

    row_ids: list[str] = []
    rows: list[list[float]] = []
    attrs: list[list[str]] = [[] for _ in attribute_columns]
    dropped = 0
    for record in reader:
        if not record or all(not cell.strip() for cell in record):
            continue
        if len(record) < len(header):
            record = record + [""] * (len(header) - len(record))
        parsed = [_parse_cell(record[p]) for p in axis_pos]
        if any(v is None for v in parsed):
            dropped += 1
            continue
        row_ids.append(record[id_pos].strip())
        rows.append(parsed)  # type: ignore[arg-type]
        for store, p in zip(attrs, attr_pos):
            store.append(record[p].strip())
    if not rows:
        raise EmptyCloudError("no rows survived axis selection")
    cloud = PointCloud(
        row_ids=tuple(row_ids),
        axis_names=tuple(axis_selector),
        values=np.array(rows, dtype=np.float64),
        attributes={
            name: tuple(store) for name, store in zip(attribute_columns, attrs)
        },
    )
    return LoadReport(cloud=cloud, dropped_rows=dropped)


def axis_stats(cloud: PointCloud) -> list[AxisStats]:
    """Per-axis mean, population sd, min and max over all rows."""
    out = []
    for j, name in enumerate(cloud.axis_names):
        column = cloud.values[:, j]
        out.append(
            AxisStats(
                axis_name=name,
                mean=float(column.mean()),
                sd=float(column.std()),
                min=float(column.min()),
                max=float(column.max()),
            )
        )
    return out


def quartile_split(
    cloud: PointCloud, attribute: str
) -> tuple[list[int], list[int]]:
    """Row indices at or below the lower quartile and at or above the upper.

    Quartiles use the symmetric nearest-rank rule: with ``k = ceil(n / 4)``
    the lower cut is the k-th smallest value and the upper cut the k-th
    largest; rows are included inclusively on both sides, so tied values can
    place a row in both groups.
    """
    values = cloud.numeric_attribute(attribute)
    order = np.sort(values)
    n = len(order)
    k = max(1, math.ceil(n / 4))
    lower_cut = order[k - 1]
    upper_cut = order[n - k]
    lower = [i for i in range(n) if values[i] <= lower_cut]
    upper = [i for i in range(n) if values[i] >= upper_cut]
    return lower, upper


def rows_subset_ids(cloud: PointCloud, rows: Iterable[int]) -> list[str]:
    return [cloud.row_ids[i] for i in rows]
