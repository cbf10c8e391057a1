"""Utterance emotion dynamics of an emotion arc.

Home base is the band ``mean ± k * stdev`` of the arc points. Each maximal run
of points outside home base is a displacement; its peak is the point farthest
from the mean (earliest on ties). Rise rate divides the peak distance by the
steps from the last in-home point to the peak, recovery rate by the steps from
the peak back to the first in-home point. Direction of the peak is ignored.
"""

from __future__ import annotations

import math
from typing import Literal

import numpy as np

from ._errors import EmptyArcError, TruncatedDisplacementError
from ._types import Displacement, EmotionArc, HomeBase, PeakReference, UedMetrics

Ddof = Literal[0, 1]
RatePool = Literal["complete", "qualifying"]


def _points(arc: EmotionArc) -> np.ndarray:
    if not arc.points:
        msg = f"Arc for {arc.doc_id!r} ({arc.dimension}) has no points"
        raise EmptyArcError(msg)
    return np.asarray(arc.points, dtype=np.float64)


def home_base(arc: EmotionArc, k: float = 1.0, ddof: Ddof = 0) -> HomeBase:
    """Mean and standard deviation of the arc points.

    ``ddof=0`` gives the population standard deviation, ``ddof=1`` the sample
    one (0 for a single point).
    """
    points = _points(arc)
    if points.min() == points.max():
        # exact: the mean of equal floats can be off by an ulp
        return HomeBase(mean=float(points[0]), stdev=0.0, k=k)
    stdev = float(points.std(ddof=ddof))
    return HomeBase(mean=float(points.mean()), stdev=stdev, k=k)


def find_displacements(arc: EmotionArc, hb: HomeBase) -> list[Displacement]:
    """Maximal runs of out-of-home points, left to right."""
    points = np.asarray(arc.points, dtype=np.float64)
    n = len(points)
    if n == 0:
        return []
    outside = (points < hb.low) | (points > hb.high)
    padded = np.concatenate(([False], outside, [False])).astype(np.int8)
    edges = np.flatnonzero(np.diff(padded))
    distances = np.abs(points - hb.mean)

    displacements = []
    for start, stop in zip(edges[::2].tolist(), edges[1::2].tolist()):
        peak = start + int(np.argmax(distances[start:stop]))
        pre_exit = start - 1 if start > 0 else None
        ret = stop if stop < n else None
        truncated = {
            (False, False): "none",
            (True, False): "at_start",
            (False, True): "at_end",
            (True, True): "both",
        }[(pre_exit is None, ret is None)]
        displacements.append(
            Displacement(
                pre_exit_idx=pre_exit,
                exit_idx=start,
                peak_idx=peak,
                return_idx=ret,
                direction="above" if points[peak] > hb.mean else "below",
                truncated=truncated,
            )
        )
    return displacements


def peak_distance(
    d: Displacement,
    arc: EmotionArc,
    hb: HomeBase,
    reference: PeakReference = "mean",
) -> float:
    """Distance of the peak from the home-base mean, or from its nearest edge."""
    distance = abs(arc.points[d.peak_idx] - hb.mean)
    if reference == "boundary":
        return max(distance - hb.k * hb.stdev, 0.0)
    return distance


def rise_rate(
    d: Displacement,
    arc: EmotionArc,
    hb: HomeBase,
    reference: PeakReference = "mean",
) -> float:
    """Peak distance per step from the last in-home point to the peak.

    Raises:
        TruncatedDisplacementError: If the displacement starts at the first point.
    """
    if d.pre_exit_idx is None:
        msg = "Displacement starts at the beginning of the arc; rise is undefined"
        raise TruncatedDisplacementError(msg)
    steps = (d.peak_idx - d.pre_exit_idx) * arc.step
    return peak_distance(d, arc, hb, reference) / steps


def recovery_rate(
    d: Displacement,
    arc: EmotionArc,
    hb: HomeBase,
    reference: PeakReference = "mean",
) -> float:
    """Peak distance per step from the peak back into home base.

    Raises:
        TruncatedDisplacementError: If the displacement runs to the last point.
    """
    if d.return_idx is None:
        msg = "Displacement runs to the end of the arc; recovery is undefined"
        raise TruncatedDisplacementError(msg)
    steps = (d.return_idx - d.peak_idx) * arc.step
    return peak_distance(d, arc, hb, reference) / steps


def _mean(values: list[float]) -> float:
    return math.fsum(values) / len(values)


def ued_metrics(
    arc: EmotionArc,
    k: float = 1.0,
    *,
    ddof: Ddof = 0,
    peak_reference: PeakReference = "mean",
    rate_pool: RatePool = "complete",
) -> UedMetrics:
    """Average, variability, rise rate and recovery rate of one arc.

    With ``rate_pool="complete"`` both rates average over the complete
    displacements and are absent when there are none. ``"qualifying"`` also
    uses truncated displacements for the rate they still define: those not
    truncated at the start for rise, not truncated at the end for recovery.

    Raises:
        EmptyArcError: If the arc has no points.
    """
    hb = home_base(arc, k, ddof)
    displacements = find_displacements(arc, hb)
    pooled = (
        displacements
        if rate_pool == "qualifying"
        else [d for d in displacements if d.truncated == "none"]
    )
    rises = [rise_rate(d, arc, hb, peak_reference) for d in pooled if d.has_rise]
    recoveries = [
        recovery_rate(d, arc, hb, peak_reference) for d in pooled if d.has_recovery
    ]
    distances = [peak_distance(d, arc, hb, peak_reference) for d in displacements]
    n_complete = sum(1 for d in displacements if d.truncated == "none")
    return UedMetrics(
        doc_id=arc.doc_id,
        dimension=arc.dimension,
        arc_len=len(arc.points),
        average=hb.mean,
        variability=hb.stdev,
        rise_rate=_mean(rises) if rises else None,
        recovery_rate=_mean(recoveries) if recoveries else None,
        n_displacements=len(displacements),
        n_complete=n_complete,
        n_truncated=len(displacements) - n_complete,
        mean_peak_distance=_mean(distances) if distances else None,
    )
