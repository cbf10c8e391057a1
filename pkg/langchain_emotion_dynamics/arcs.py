"""Emotion arcs: window means over the emotion words of a text.

On the lexicon path the window unit is the emotion word, so arc index ``i``
starts at the ``i``-th emotion word when ``step`` is 1. Externally scored arcs
(e.g. a regression model run over raw-token windows) are ingested as-is.
"""

from __future__ import annotations

import csv
import logging
import math
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Optional, Union

import numpy as np

from ._errors import (
    ConfigError,
    DuplicateIndexError,
    EmptyArcError,
    InsufficientEmotionWordsError,
    MalformedCsvError,
    MalformedLineError,
    NonContiguousIndicesError,
    ScoreOutOfRangeError,
    SchemaMismatchError,
    UnknownDimensionError,
)
from ._types import EmotionArc, NeutralBand, ScoredSequence, TokenSequence
from .lexicon import Lexicon

logger = logging.getLogger(__name__)

WINDOW_SCORE_COLUMNS = ("doc_id", "window_index", "score")
WindowRecord = tuple[str, int, float]


def emotion_word_sequence(
    tokens: TokenSequence,
    lexicon: Lexicon,
    dimension: str,
    band: Optional[NeutralBand] = None,
) -> ScoredSequence:
    """Scores of the non-neutral lexicon words of ``tokens``, in text order.

    Raises:
        UnknownDimensionError: If ``dimension`` is not declared by the lexicon.
    """
    if dimension not in lexicon.dimension_names:
        raise UnknownDimensionError(dimension, list(lexicon.dimension_names))
    scores = []
    for token in tokens.tokens:
        entry = lexicon.entries.get(token)
        if entry is None or dimension not in entry:
            continue
        score = entry[dimension]
        if band is not None and band.is_neutral(score):
            continue
        scores.append(score)
    return ScoredSequence(
        doc_id=tokens.doc_id,
        dimension=dimension,
        scores=tuple(scores),
        n_tokens=len(tokens.tokens),
    )


def arc_length(n_scores: int, window: int, step: int) -> int:
    """Number of full windows over ``n_scores`` values."""
    if n_scores < window:
        return 0
    return (n_scores - window) // step + 1


def build_arc(seq: ScoredSequence, window: int = 5, step: int = 1) -> EmotionArc:
    """Average ``seq`` over full sliding windows.

    Partial windows at the tail are dropped, never padded.

    Raises:
        ConfigError: If ``window`` or ``step`` is below 1.
        InsufficientEmotionWordsError: If ``seq`` has fewer scores than ``window``.
    """
    if window < 1 or step < 1:
        msg = f"window and step must be positive, got window={window}, step={step}"
        raise ConfigError(msg)
    if len(seq.scores) < window:
        raise InsufficientEmotionWordsError(seq.doc_id, len(seq.scores), window)
    scores = np.asarray(seq.scores, dtype=np.float64)
    windows = np.lib.stride_tricks.sliding_window_view(scores, window)[::step]
    # exactly rounded, so windows holding the same words in any order agree
    points = tuple(math.fsum(w) / window for w in windows.tolist())
    return EmotionArc(
        doc_id=seq.doc_id,
        dimension=seq.dimension,
        points=points,
        window=window,
        step=step,
    )


def arc_from_window_scores(
    records: Sequence[WindowRecord],
    *,
    dimension: str = "valence",
    window: int = 5,
    step: int = 1,
    score_range: tuple[float, float] = (0.0, 1.0),
) -> EmotionArc:
    """Build an arc from externally scored windows of one document.

    Args:
        records: ``(doc_id, window_index, score)`` triples, in any order.
        dimension: Dimension the scores measure.
        window: Window size the scores were produced with.
        step: Step between windows.
        score_range: Range every score must lie in.

    Raises:
        EmptyArcError: If ``records`` is empty.
        MalformedCsvError: If the records mix several documents.
        DuplicateIndexError: If a window index repeats.
        NonContiguousIndicesError: If indices do not run 0, 1, 2, ... without gaps.
        ScoreOutOfRangeError: If a score is outside ``score_range``.
    """
    if not records:
        msg = "No window scores to build an arc from"
        raise EmptyArcError(msg)
    doc_ids = {doc_id for doc_id, _, _ in records}
    if len(doc_ids) != 1:
        msg = f"Window scores mix documents: {', '.join(sorted(doc_ids))}"
        raise MalformedCsvError(msg)
    doc_id = records[0][0]
    low, high = score_range

    by_index: dict[int, float] = {}
    for _, index, score in records:
        if index in by_index:
            raise DuplicateIndexError(doc_id, index)
        if not low <= score <= high:
            raise ScoreOutOfRangeError(f"{doc_id}[{index}]", score, low, high)
        by_index[index] = score
    for expected, index in enumerate(sorted(by_index)):
        if index != expected:
            raise NonContiguousIndicesError(doc_id, expected)

    return EmotionArc(
        doc_id=doc_id,
        dimension=dimension,
        points=tuple(by_index[i] for i in range(len(by_index))),
        window=window,
        step=step,
    )


def read_window_scores(path: Union[str, Path]) -> dict[str, list[WindowRecord]]:
    """Read a ``doc_id,window_index,score`` CSV, grouped by document.

    Documents keep their order of first appearance.

    Raises:
        FileNotFoundError: If ``path`` does not exist.
        SchemaMismatchError: If the header is not the window-score schema.
        MalformedLineError: If a row has an empty id or non-numeric fields.
    """
    path = Path(path)
    if not path.is_file():
        msg = f"Window scores file not found: {path}"
        raise FileNotFoundError(msg)
    grouped: dict[str, list[WindowRecord]] = {}
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle, strict=True)
        try:
            header = next(reader, None)
            if header is None:
                return grouped
            if tuple(name.strip() for name in header) != WINDOW_SCORE_COLUMNS:
                msg = (
                    f"{path}: expected header {','.join(WINDOW_SCORE_COLUMNS)}, "
                    f"found {','.join(header)}"
                )
                raise SchemaMismatchError(msg)
            for row in reader:
                if not row:
                    continue
                record = _parse_window_row(row, reader.line_num, path)
                grouped.setdefault(record[0], []).append(record)
        except csv.Error as e:
            msg = f"{path}:{reader.line_num}: {e}"
            raise MalformedCsvError(msg) from e
    return grouped


def _parse_window_row(row: list[str], line_number: int, path: Path) -> WindowRecord:
    if len(row) != len(WINDOW_SCORE_COLUMNS):
        detail = f"expected {len(WINDOW_SCORE_COLUMNS)} fields, found {len(row)}"
        raise MalformedLineError(line_number, detail, str(path))
    doc_id, raw_index, raw_score = row
    if not doc_id:
        raise MalformedLineError(line_number, "empty doc_id", str(path))
    try:
        index = int(raw_index)
        score = float(raw_score)
    except ValueError:
        detail = f"window_index {raw_index!r} / score {raw_score!r} are not numbers"
        raise MalformedLineError(line_number, detail, str(path)) from None
    if index < 0:
        raise MalformedLineError(line_number, "negative window_index", str(path))
    if not 0.0 <= score <= 1.0:
        raise ScoreOutOfRangeError(f"{doc_id}[{index}]", score, 0.0, 1.0, line_number)
    return doc_id, index, score


def load_window_scores(
    path: Union[str, Path],
    *,
    dimension: str = "valence",
    window: int = 5,
    step: int = 1,
) -> list[EmotionArc]:
    """Load externally scored windows as one arc per document."""
    grouped = read_window_scores(path)
    if not grouped:
        logger.warning("No window scores found in %s", path)
    return [
        arc_from_window_scores(
            records, dimension=dimension, window=window, step=step
        )
        for records in grouped.values()
    ]


def token_windows(
    tokens: Sequence[str], window: int = 5, step: int = 1
) -> list[tuple[int, str]]:
    """Raw-token windows for an external scorer, as ``(window_index, text)``.

    Unlike lexicon arcs, every token counts, including words missing from the
    lexicon. Sequences shorter than ``window`` give no windows.
    """
    if window < 1 or step < 1:
        msg = f"window and step must be positive, got window={window}, step={step}"
        raise ConfigError(msg)
    return [
        (index, " ".join(tokens[start : start + window]))
        for index, start in enumerate(range(0, len(tokens) - window + 1, step))
    ]


def arcs_points(arcs: Iterable[EmotionArc]) -> dict[str, list[float]]:
    """Arc points keyed by dimension, for JSON output."""
    return {arc.dimension: list(arc.points) for arc in arcs}
