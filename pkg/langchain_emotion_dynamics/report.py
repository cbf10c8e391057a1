"""Group aggregation, reference overlays and result files."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
import tempfile
from collections.abc import Iterable, Mapping, Sequence
from decimal import ROUND_HALF_EVEN, Decimal
from pathlib import Path
from typing import Any, Literal, Optional, Union

from pydantic import BaseModel
from scipy.stats import spearmanr

from ._errors import (
    DimensionMismatchError,
    MalformedCsvError,
    MalformedLineError,
    SchemaMismatchError,
)
from ._resources import data_text
from ._types import (
    METRICS,
    GroupSummary,
    Metric,
    OverlayRow,
    ReferenceOverlay,
    UedMetrics,
    dimension_sort_key,
)
from .corpus import group_sort_key

logger = logging.getLogger(__name__)

OutputFormat = Literal["csv", "json"]

UNIT_COLUMNS = (
    "doc_id",
    "group",
    "dimension",
    "n_tokens",
    "n_emotion_words",
    "arc_len",
    "average",
    "variability",
    "rise_rate",
    "recovery_rate",
    "n_displacements",
    "n_complete",
    "n_truncated",
)
GROUP_COLUMNS = ("group", "dimension", "metric", "value", "n_units")
REFERENCE_COLUMNS = ("dimension", "metric", "value")
ADULT_REFERENCE_FILE = "adult_reference.csv"

_INT_COLUMNS = frozenset(
    {"n_tokens", "n_emotion_words", "arc_len", "n_displacements", "n_complete", "n_truncated"}
)
_SIX_PLACES = Decimal("0.000001")


def aggregate_by_group(
    per_unit: Iterable[UedMetrics], min_units: int = 5
) -> list[GroupSummary]:
    """Mean of each metric per (group, dimension) over the units defining it.

    The value is absent when fewer than ``min_units`` units define the metric;
    ``n_units`` is recorded either way. Units without a group fall in ``""``.
    """
    if min_units < 1:
        msg = f"min_units must be at least 1, got {min_units}"
        raise ValueError(msg)
    pools: dict[tuple[str, str], dict[Metric, list[float]]] = {}
    for unit in per_unit:
        pool = pools.setdefault(
            (unit.group or "", unit.dimension), {m: [] for m in METRICS}
        )
        for metric in METRICS:
            value = unit.metric(metric)
            if value is not None:
                pool[metric].append(value)

    summaries = []
    for group, dimension in sorted(
        pools, key=lambda key: (group_sort_key(key[0]), dimension_sort_key(key[1]))
    ):
        pool = pools[(group, dimension)]
        for metric in METRICS:
            values = pool[metric]
            summaries.append(
                GroupSummary(
                    group=group,
                    dimension=dimension,
                    metric=metric,
                    # fsum keeps the mean independent of unit order
                    value=math.fsum(values) / len(values)
                    if len(values) >= min_units
                    else None,
                    n_units=len(values),
                )
            )
    return summaries


def _format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return str(Decimal(repr(value)).quantize(_SIX_PLACES, rounding=ROUND_HALF_EVEN))
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float):
        return float(_format_value(value))
    return value


def _rows(
    records: Sequence[Union[BaseModel, Mapping[str, Any]]], columns: Sequence[str]
) -> list[dict[str, Any]]:
    rows = []
    for record in records:
        data = record.model_dump() if isinstance(record, BaseModel) else dict(record)
        rows.append({column: data.get(column) for column in columns})
    return rows


def _default_columns(records: Sequence[Any]) -> tuple[str, ...]:
    first = records[0]
    if isinstance(first, UedMetrics):
        return UNIT_COLUMNS
    if isinstance(first, GroupSummary):
        return GROUP_COLUMNS
    if isinstance(first, BaseModel):
        return tuple(type(first).model_fields)
    return tuple(first)


def render(
    records: Sequence[Union[BaseModel, Mapping[str, Any]]],
    fmt: OutputFormat = "csv",
    columns: Optional[Sequence[str]] = None,
) -> str:
    """Serialise homogeneous records as CSV or a JSON array of objects.

    Floats are written with six decimals, rounded half to even; absent values
    become an empty cell or ``null``.
    """
    if columns is None:
        if not records:
            msg = "columns are required to render an empty record set"
            raise ValueError(msg)
        columns = _default_columns(records)
    rows = _rows(records, columns)
    if fmt == "json":
        payload = [{k: _json_value(v) for k, v in row.items()} for row in rows]
        return json.dumps(payload, indent=2) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_format_value(row[column]) for column in columns])
    return buffer.getvalue()


def write_atomic(path: Union[str, Path], content: str) -> None:
    """Write ``content`` to ``path`` via a temporary file and rename.

    Raises:
        OSError: If the target directory cannot be written, naming ``path``.
    """
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    try:
        fd, tmp_name = tempfile.mkstemp(
            dir=directory, prefix=f".{path.name}.", suffix=".tmp"
        )
    except OSError as e:
        msg = f"Cannot write {path}: {e.strerror or e}"
        raise OSError(e.errno, msg) from e
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(content)
        os.replace(tmp_name, path)
    except OSError as e:
        Path(tmp_name).unlink(missing_ok=True)
        msg = f"Cannot write {path}: {e.strerror or e}"
        raise OSError(e.errno, msg) from e
    logger.debug("Wrote %s", path)


def export(
    records: Sequence[Union[BaseModel, Mapping[str, Any]]],
    fmt: OutputFormat,
    path: Union[str, Path],
    columns: Optional[Sequence[str]] = None,
) -> None:
    """Write records to ``path`` atomically.

    Per-unit metrics use the ``UNIT_COLUMNS`` order and group summaries the
    ``GROUP_COLUMNS`` order unless ``columns`` is given.
    """
    write_atomic(path, render(records, fmt, columns))


def load_reference(path: Union[str, Path]) -> ReferenceOverlay:
    """Read a ``dimension,metric,value`` reference table.

    Raises:
        FileNotFoundError: If ``path`` does not exist.
        SchemaMismatchError: If the header is not the reference schema.
    """
    path = Path(path)
    if not path.is_file():
        msg = f"Reference file not found: {path}"
        raise FileNotFoundError(msg)
    return _parse_reference(path.read_text(encoding="utf-8"), str(path))


def adult_reference() -> ReferenceOverlay:
    """Reference values of poems written by adults, shipped with the package."""
    return _parse_reference(data_text(ADULT_REFERENCE_FILE), ADULT_REFERENCE_FILE)


def _parse_reference(text: str, source: str) -> ReferenceOverlay:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != REFERENCE_COLUMNS:
        msg = f"{source}: expected header {','.join(REFERENCE_COLUMNS)}"
        raise SchemaMismatchError(msg)
    values: dict[str, dict[Metric, float]] = {}
    for row in reader:
        if not row:
            continue
        if len(row) != 3 or row[1] not in METRICS:
            detail = f"expected dimension,metric,value with a known metric, got {row}"
            raise MalformedLineError(reader.line_num, detail, source)
        try:
            value = float(row[2])
        except ValueError:
            detail = f"value {row[2]!r} is not a number"
            raise MalformedLineError(reader.line_num, detail, source) from None
        metric: Metric = row[1]  # type: ignore[assignment]
        values.setdefault(row[0].strip().lower(), {})[metric] = value
    return ReferenceOverlay(values=values)


def reference_overlay(
    summaries: Sequence[GroupSummary], adult: ReferenceOverlay
) -> list[OverlayRow]:
    """Set each (dimension, metric) group series beside its reference value.

    ``nearest_group`` is the group whose defined value is closest to the
    reference, the first in group order on ties.

    Raises:
        DimensionMismatchError: If the reference lacks a summarised pair.
    """
    series: dict[tuple[str, Metric], list[GroupSummary]] = {}
    for summary in summaries:
        series.setdefault((summary.dimension, summary.metric), []).append(summary)

    rows = []
    for (dimension, metric), items in series.items():
        reference = adult.get(dimension, metric)
        if reference is None:
            msg = f"Reference has no {metric} value for dimension {dimension!r}"
            raise DimensionMismatchError(msg)
        items = sorted(items, key=lambda s: group_sort_key(s.group))
        nearest: Optional[str] = None
        best = math.inf
        for item in items:
            if item.value is not None and abs(item.value - reference) < best:
                best = abs(item.value - reference)
                nearest = item.group
        rows.append(
            OverlayRow(
                dimension=dimension,
                metric=metric,
                reference=reference,
                groups=[s.group for s in items],
                values=[s.value for s in items],
                n_units=[s.n_units for s in items],
                nearest_group=nearest,
            )
        )
    rows.sort(
        key=lambda r: (dimension_sort_key(r.dimension), METRICS.index(r.metric))
    )
    return rows


def overlay_columns(
    summaries: Sequence[GroupSummary], overlay: Sequence[OverlayRow]
) -> list[dict[str, Any]]:
    """Group summary rows extended with ``reference`` and ``nearest_group``."""
    by_key = {(row.dimension, row.metric): row for row in overlay}
    rows = []
    for summary in summaries:
        row = summary.model_dump()
        match = by_key.get((summary.dimension, summary.metric))
        row["reference"] = match.reference if match else None
        row["nearest_group"] = match.nearest_group if match else None
        rows.append(row)
    return rows


def plot_series(
    summaries: Sequence[GroupSummary],
    overlay: Optional[ReferenceOverlay] = None,
) -> dict[str, dict[str, dict[str, Any]]]:
    """Plot-ready series: ``{dimension: {metric: {groups, values, n_units, reference}}}``."""
    out: dict[str, dict[str, dict[str, Any]]] = {}
    for summary in sorted(
        summaries,
        key=lambda s: (
            dimension_sort_key(s.dimension),
            METRICS.index(s.metric),
            group_sort_key(s.group),
        ),
    ):
        entry = out.setdefault(summary.dimension, {}).setdefault(
            summary.metric,
            {
                "groups": [],
                "values": [],
                "n_units": [],
                "reference": overlay.get(summary.dimension, summary.metric)
                if overlay
                else None,
            },
        )
        entry["groups"].append(summary.group)
        entry["values"].append(
            None if summary.value is None else _json_value(summary.value)
        )
        entry["n_units"].append(summary.n_units)
    return out


def group_trend(
    summaries: Sequence[GroupSummary],
) -> dict[tuple[str, Metric], Optional[float]]:
    """Spearman correlation of each metric with numeric group order.

    Non-numeric groups are ignored. A trend is ``None`` when fewer than three
    groups have a value or the values are constant.
    """
    points: dict[tuple[str, Metric], list[tuple[float, float]]] = {}
    for summary in summaries:
        key = (summary.dimension, summary.metric)
        points.setdefault(key, [])
        rank, order, _ = group_sort_key(summary.group)
        if rank == 0 and summary.value is not None:
            points[key].append((order, summary.value))

    trends: dict[tuple[str, Metric], Optional[float]] = {}
    for key, pairs in points.items():
        values = [v for _, v in pairs]
        if len(pairs) < 3 or min(values) == max(values):
            trends[key] = None
            continue
        rho, _pvalue = spearmanr([g for g, _ in pairs], values)
        trends[key] = None if math.isnan(rho) else float(rho)
    return trends


def _parse_optional(raw: str, cast: type, line_number: int, path: str) -> Any:
    if raw == "":
        return None
    try:
        return cast(raw)
    except ValueError:
        raise MalformedLineError(
            line_number, f"{raw!r} is not a valid {cast.__name__}", path
        ) from None


def load_unit_metrics(path: Union[str, Path]) -> list[UedMetrics]:
    """Read a per-unit metrics CSV written by ``export``.

    Raises:
        FileNotFoundError: If ``path`` does not exist.
        SchemaMismatchError: If the header is not the per-unit schema.
        MalformedLineError: If a value cannot be parsed.
    """
    path = Path(path)
    if not path.is_file():
        msg = f"Per-unit metrics file not found: {path}"
        raise FileNotFoundError(msg)
    metrics = []
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle, strict=True)
        try:
            header = next(reader, None)
            if header is None:
                return []
            if tuple(header) != UNIT_COLUMNS:
                msg = (
                    f"{path}: expected header {','.join(UNIT_COLUMNS)}, "
                    f"found {','.join(header)}"
                )
                raise SchemaMismatchError(msg)
            for row in reader:
                if not row:
                    continue
                if len(row) != len(UNIT_COLUMNS):
                    detail = f"expected {len(UNIT_COLUMNS)} fields, found {len(row)}"
                    raise MalformedLineError(reader.line_num, detail, str(path))
                data = {
                    column: raw
                    if column in ("doc_id", "group", "dimension")
                    else _parse_optional(
                        raw,
                        int if column in _INT_COLUMNS else float,
                        reader.line_num,
                        str(path),
                    )
                    for column, raw in zip(UNIT_COLUMNS, row)
                }
                data["group"] = data["group"] or None
                try:
                    metrics.append(
                        UedMetrics.model_validate(data, context={"rounded": True})
                    )
                except ValueError as e:
                    raise MalformedLineError(reader.line_num, str(e), str(path)) from e
        except csv.Error as e:
            msg = f"{path}:{reader.line_num}: {e}"
            raise MalformedCsvError(msg) from e
    logger.info("Loaded %d per-unit rows from %s", len(metrics), path)
    return metrics
