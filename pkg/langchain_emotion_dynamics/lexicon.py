"""NRC-style word-emotion lexicons.

Three tab-separated layouts are read:

* ``single-dimension``: ``term<TAB>score`` rows for one named dimension.
* ``multi-dimension``: ``term<TAB>dimension<TAB>score`` rows (the NRC Emotion
  Intensity layout).
* ``wide``: a header ``term<TAB>dim1<TAB>dim2...`` followed by one row per term
  (the NRC VAD layout).

Lines starting with ``#`` and blank lines are skipped. Raw scores must lie in
``score_range`` (``[0, 1]`` by default); ``zero-one-to-signed-unit`` rescaling
maps each score ``v`` to ``2v - 1``.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator
from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ._errors import (
    DuplicateEntryError,
    MalformedLineError,
    ScoreOutOfRangeError,
    UnknownDimensionError,
)
from ._types import NeutralBand

logger = logging.getLogger(__name__)

LexiconFormat = Literal["single-dimension", "multi-dimension", "wide"]
Rescale = Literal["none", "zero-one-to-signed-unit"]

SIGNED_UNIT_RANGE = (-1.0, 1.0)
VAD_DIMENSIONS = frozenset({"valence", "arousal", "dominance"})
# first-column names of header rows in the non-wide layouts
HEADER_TERMS = frozenset({"term", "terms", "word", "words", "english word", "lemma"})


class Lexicon(BaseModel):
    """Word-emotion scores over one or more emotion dimensions.

    Immutable after load, so one instance can be shared by any number of
    concurrent analyses.
    """

    model_config = ConfigDict(frozen=True)

    name: str = Field(description="Identifier of the lexicon.")
    dimension_names: tuple[str, ...] = Field(
        description="Emotion dimensions scored by this lexicon."
    )
    entries: dict[str, dict[str, float]] = Field(
        default_factory=dict, description="term -> dimension -> score."
    )
    score_range: tuple[float, float] = Field(
        default=(0.0, 1.0), description="Closed interval of valid scores."
    )
    rescale: Rescale = "none"

    @model_validator(mode="after")
    def _check_entries(self) -> Lexicon:
        if not self.dimension_names:
            msg = f"Lexicon {self.name!r} declares no dimensions"
            raise ValueError(msg)
        low, high = self.score_range
        declared = set(self.dimension_names)
        for term, scores in self.entries.items():
            if not term or term != term.lower():
                msg = f"Lexicon term {term!r} must be non-empty and lowercase"
                raise ValueError(msg)
            for dimension, score in scores.items():
                if dimension not in declared:
                    raise UnknownDimensionError(dimension, list(self.dimension_names))
                if not low <= score <= high:
                    raise ScoreOutOfRangeError(term, score, low, high)
        return self

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, term: object) -> bool:
        return term in self.entries

    def default_band(self, half_width: float = 0.0) -> Optional[NeutralBand]:
        """Neutral band used for this lexicon's scores.

        Signed (rescaled) lexicons treat scores near 0 as neutral. Unsigned
        intensity lexicons have no score-based neutrality: only words missing
        from the lexicon are neutral.
        """
        if self.rescale == "none":
            return None
        return NeutralBand(half_width=half_width, center=0.0)


def score_token(lexicon: Lexicon, token: str, dimension: str) -> Optional[float]:
    """Look up the score of ``token`` on ``dimension``.

    Returns:
        The stored score, or ``None`` when the term is not in the lexicon.

    Raises:
        UnknownDimensionError: If ``dimension`` is not declared by the lexicon.
    """
    if dimension not in lexicon.dimension_names:
        raise UnknownDimensionError(dimension, list(lexicon.dimension_names))
    scores = lexicon.entries.get(token)
    if scores is None:
        return None
    return scores.get(dimension)


def _data_lines(path: Path) -> Iterator[tuple[int, list[str]]]:
    # newline=None accepts LF and CRLF files alike
    with open(path, encoding="utf-8", newline=None) as handle:
        for line_number, line in enumerate(handle, start=1):
            stripped = line.rstrip("\n")
            if not stripped.strip() or stripped.startswith("#"):
                continue
            yield line_number, [field.strip() for field in stripped.split("\t")]


def _parse_score(value: str, line_number: int, path: Path) -> float:
    try:
        return float(value)
    except ValueError:
        raise MalformedLineError(
            line_number, f"score {value!r} is not a number", str(path)
        ) from None


def _is_number(value: str) -> bool:
    try:
        float(value)
    except ValueError:
        return False
    return True


def _is_header(fields: list[str]) -> bool:
    return fields[0].lower() in HEADER_TERMS and not _is_number(fields[-1])


def _iter_rows(
    path: Path, fmt: LexiconFormat, dimension: str
) -> Iterator[tuple[int, str, str, float]]:
    """Yield ``(line_number, term, dimension, raw_score)`` rows."""
    lines = _data_lines(path)
    if fmt == "wide":
        try:
            header_line, header = next(lines)
        except StopIteration:
            return
        dimensions = [name.lower() for name in header[1:]]
        if not dimensions or any(_is_number(name) for name in dimensions):
            detail = "wide layout needs a header row naming the dimensions"
            raise MalformedLineError(header_line, detail, str(path))
        for line_number, fields in lines:
            if len(fields) != len(header):
                detail = f"expected {len(header)} fields, found {len(fields)}"
                raise MalformedLineError(line_number, detail, str(path))
            for name, value in zip(dimensions, fields[1:]):
                yield line_number, fields[0], name, _parse_score(
                    value, line_number, path
                )
        return

    n_fields = 2 if fmt == "single-dimension" else 3
    first = True
    for line_number, fields in lines:
        if len(fields) != n_fields:
            detail = f"expected {n_fields} fields, found {len(fields)}"
            raise MalformedLineError(line_number, detail, str(path))
        if first and _is_header(fields):
            first = False
            logger.debug("Skipping header line %d of %s", line_number, path)
            continue
        first = False
        if fmt == "single-dimension":
            yield line_number, fields[0], dimension, _parse_score(
                fields[1], line_number, path
            )
        else:
            yield line_number, fields[0], fields[1].lower(), _parse_score(
                fields[2], line_number, path
            )


def load_lexicon(
    path: Union[str, Path],
    fmt: LexiconFormat = "single-dimension",
    rescale: Rescale = "none",
    *,
    dimension: Optional[str] = None,
    name: Optional[str] = None,
    score_range: tuple[float, float] = (0.0, 1.0),
) -> Lexicon:
    """Load a tab-separated emotion lexicon.

    Args:
        path: UTF-8 lexicon file.
        fmt: Row layout of the file.
        rescale: ``zero-one-to-signed-unit`` maps every score ``v`` to ``2v - 1``.
        dimension: Dimension name for ``single-dimension`` files. Defaults to the
            file stem.
        name: Lexicon identifier. Defaults to the file stem.
        score_range: Range raw scores must lie in.

    Returns:
        The loaded lexicon.

    Raises:
        FileNotFoundError: If ``path`` does not exist.
        MalformedLineError: If a row has the wrong shape or a non-numeric score.
        ScoreOutOfRangeError: If a raw score is outside ``score_range``.
        DuplicateEntryError: If a (term, dimension) pair occurs twice.
    """
    path = Path(path)
    if not path.is_file():
        msg = f"Lexicon file not found: {path}"
        raise FileNotFoundError(msg)

    single_name = (dimension or path.stem).lower()
    low, high = score_range
    entries: dict[str, dict[str, float]] = {}
    dimensions: list[str] = [single_name] if fmt == "single-dimension" else []
    skipped_phrases = 0

    for line_number, raw_term, dim, raw_score in _iter_rows(path, fmt, single_name):
        term = raw_term.lower()
        if not term or any(ch.isspace() for ch in term):
            skipped_phrases += 1
            continue
        if not low <= raw_score <= high:
            raise ScoreOutOfRangeError(term, raw_score, low, high, line_number)
        scores = entries.setdefault(term, {})
        if dim in scores:
            raise DuplicateEntryError(term, dim)
        if dim not in dimensions:
            dimensions.append(dim)
        scores[dim] = 2.0 * raw_score - 1.0 if rescale != "none" else raw_score

    if skipped_phrases:
        logger.info("Skipped %d multi-word entries in %s", skipped_phrases, path)

    lexicon = Lexicon(
        name=name or path.stem,
        dimension_names=tuple(dimensions),
        entries=entries,
        score_range=SIGNED_UNIT_RANGE if rescale != "none" else (low, high),
        rescale=rescale,
    )
    logger.info(
        "Loaded lexicon %s: %d terms, dimensions %s",
        lexicon.name,
        len(lexicon),
        ", ".join(lexicon.dimension_names),
    )
    return lexicon


def dump_lexicon(lexicon: Lexicon, path: Union[str, Path]) -> None:
    """Write ``lexicon`` in the ``multi-dimension`` layout.

    Reloading the file with ``score_range=lexicon.score_range`` and no rescale
    reproduces the entry map exactly.
    """
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(f"# lexicon: {lexicon.name}\n")
        for term in sorted(lexicon.entries):
            scores = lexicon.entries[term]
            for dimension in sorted(scores):
                handle.write(f"{term}\t{dimension}\t{scores[dimension]!r}\n")


def lexicons_by_dimension(lexicons: Iterable[Lexicon]) -> dict[str, Lexicon]:
    """Index several lexicons by the dimensions they score.

    Raises:
        DuplicateEntryError: If two lexicons declare the same dimension.
    """
    index: dict[str, Lexicon] = {}
    for lexicon in lexicons:
        for dimension in lexicon.dimension_names:
            if dimension in index:
                raise DuplicateEntryError(
                    f"<{index[dimension].name} / {lexicon.name}>", dimension
                )
            index[dimension] = lexicon
    return index


def default_rescale(dimensions: Iterable[str]) -> Rescale:
    """Rescale VAD lexicons to ``[-1, 1]``; leave intensity lexicons in ``[0, 1]``."""
    return "zero-one-to-signed-unit" if VAD_DIMENSIONS & set(dimensions) else "none"


def sniff_format(path: Union[str, Path]) -> LexiconFormat:
    """Guess the layout of a lexicon file from its first data line."""
    path = Path(path)
    if not path.is_file():
        msg = f"Lexicon file not found: {path}"
        raise FileNotFoundError(msg)
    seen_header = False
    for _line_number, fields in _data_lines(path):
        if not seen_header and _is_header(fields):
            seen_header = True
            continue
        if len(fields) == 2:
            return "single-dimension"
        if len(fields) == 3 and not _is_number(fields[1]):
            return "multi-dimension"
        return "wide"
    return "single-dimension"


def peek_dimensions(
    path: Union[str, Path], fmt: LexiconFormat, dimension: Optional[str] = None
) -> list[str]:
    """Dimensions a lexicon file declares, read without validating scores."""
    path = Path(path)
    if fmt == "single-dimension":
        return [(dimension or path.stem).lower()]
    if fmt == "wide":
        for _line_number, fields in _data_lines(path):
            return [name.lower() for name in fields[1:]]
        return []
    seen: dict[str, None] = {}
    for _line_number, fields in _data_lines(path):
        if len(fields) == 3 and _is_number(fields[2]):
            seen.setdefault(fields[1].lower(), None)
    return list(seen)

