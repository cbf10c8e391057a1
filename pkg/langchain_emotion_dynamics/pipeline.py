"""Batch analysis: analysis units to per-unit metrics, optionally in parallel."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from pydantic import BaseModel, Field

from ._types import AnalysisUnit, EmotionArc, UedMetrics, dimension_sort_key
from .arcs import build_arc, emotion_word_sequence
from .config import RunConfig
from .corpus import group_sort_key
from .dynamics import ued_metrics
from .lexicon import Lexicon

logger = logging.getLogger(__name__)


class UnitResult(BaseModel):
    """Metrics of one unit, with the dimensions it was excluded from."""

    unit_id: str
    group: str
    metrics: list[UedMetrics] = Field(default_factory=list)
    excluded: list[str] = Field(default_factory=list)


class RunDiagnostics(BaseModel):
    """Counts reported alongside a run's outputs."""

    n_units: int = 0
    n_rows: int = 0
    excluded: dict[str, int] = Field(
        default_factory=dict,
        description="Units below min_emotion_words, per dimension.",
    )
    excluded_by_group: dict[str, dict[str, int]] = Field(default_factory=dict)

    def record(self, result: UnitResult) -> None:
        self.n_units += 1
        self.n_rows += len(result.metrics)
        for dimension in result.excluded:
            self.excluded[dimension] = self.excluded.get(dimension, 0) + 1
            by_dim = self.excluded_by_group.setdefault(result.group, {})
            by_dim[dimension] = by_dim.get(dimension, 0) + 1

    def sorted(self) -> RunDiagnostics:
        """Copy with keys in reporting order, for stable manifests."""
        return RunDiagnostics(
            n_units=self.n_units,
            n_rows=self.n_rows,
            excluded={
                d: self.excluded[d] for d in sorted(self.excluded, key=dimension_sort_key)
            },
            excluded_by_group={
                g: {
                    d: self.excluded_by_group[g][d]
                    for d in sorted(self.excluded_by_group[g], key=dimension_sort_key)
                }
                for g in sorted(self.excluded_by_group, key=group_sort_key)
            },
        )


def arc_metrics(
    arc: EmotionArc,
    config: RunConfig,
    *,
    group: Optional[str] = None,
    n_tokens: Optional[int] = None,
    n_emotion_words: Optional[int] = None,
) -> UedMetrics:
    """UED metrics of one arc with the run's dynamics settings and metadata."""
    metrics = ued_metrics(
        arc,
        config.homebase_k,
        ddof=config.ddof,
        peak_reference=config.peak_reference,
        rate_pool=config.rate_pool,
    )
    return metrics.model_copy(
        update={
            "group": group,
            "n_tokens": n_tokens,
            "n_emotion_words": n_emotion_words,
        }
    )


def analyze_unit(
    unit: AnalysisUnit,
    registry: Mapping[str, Lexicon],
    dimensions: Sequence[str],
    config: RunConfig,
) -> UnitResult:
    """Arc and metrics of ``unit`` for each dimension.

    A dimension with fewer than ``min_emotion_words`` emotion words is
    excluded instead of analysed.
    """
    tokens = unit.token_sequence()
    result = UnitResult(unit_id=unit.unit_id, group=unit.group)
    for dimension in dimensions:
        lexicon = registry[dimension]
        band = lexicon.default_band(config.neutral_half_width)
        seq = emotion_word_sequence(tokens, lexicon, dimension, band)
        if seq.n_emotion_words < config.min_emotion_words:
            result.excluded.append(dimension)
            continue
        arc = build_arc(seq, config.window, config.step)
        result.metrics.append(
            arc_metrics(
                arc,
                config,
                group=unit.group,
                n_tokens=seq.n_tokens,
                n_emotion_words=seq.n_emotion_words,
            )
        )
    return result


# Per-process state for pool workers, set once by the initializer.
_worker_state: dict[str, object] = {}


def _init_worker(
    registry: Mapping[str, Lexicon], dimensions: Sequence[str], config: RunConfig
) -> None:
    _worker_state["registry"] = registry
    _worker_state["dimensions"] = dimensions
    _worker_state["config"] = config


def _analyze_in_worker(unit: AnalysisUnit) -> UnitResult:
    return analyze_unit(
        unit,
        _worker_state["registry"],  # type: ignore[arg-type]
        _worker_state["dimensions"],  # type: ignore[arg-type]
        _worker_state["config"],  # type: ignore[arg-type]
    )


def analyze_units(
    units: Sequence[AnalysisUnit],
    registry: Mapping[str, Lexicon],
    dimensions: Sequence[str],
    config: RunConfig,
) -> tuple[list[UedMetrics], RunDiagnostics]:
    """Analyse every unit; rows come back in unit order, then dimension order.

    With ``config.workers > 1`` units are spread over a process pool. The
    pool's ``map`` returns results in input order, so output does not depend
    on scheduling.
    """
    results: Iterable[UnitResult]
    if config.workers > 1 and len(units) > 1:
        logger.info("Analysing %d units with %d workers", len(units), config.workers)
        chunksize = max(1, len(units) // (config.workers * 8))
        with ProcessPoolExecutor(
            max_workers=config.workers,
            initializer=_init_worker,
            initargs=(dict(registry), list(dimensions), config),
        ) as executor:
            results = list(executor.map(_analyze_in_worker, units, chunksize=chunksize))
    else:
        results = [analyze_unit(u, registry, dimensions, config) for u in units]

    diagnostics = RunDiagnostics()
    rows: list[UedMetrics] = []
    for result in results:
        diagnostics.record(result)
        rows.extend(result.metrics)
    for dimension, count in diagnostics.excluded.items():
        logger.info(
            "%d of %d units excluded from %s: fewer than %d emotion words",
            count,
            len(units),
            dimension,
            config.min_emotion_words,
        )
    return rows, diagnostics.sorted()


def analyze_arcs(
    arcs: Iterable[EmotionArc],
    config: RunConfig,
    groups: Optional[Mapping[str, str]] = None,
) -> list[UedMetrics]:
    """Metrics of externally scored arcs, in input order.

    ``groups`` maps doc ids to group labels; unknown ids get no group.
    """
    groups = groups or {}
    return [arc_metrics(arc, config, group=groups.get(arc.doc_id)) for arc in arcs]
