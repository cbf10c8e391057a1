"""Document collections: loading, length filtering, analysis units and statistics."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Optional, Union

import pandas as pd
from pydantic import BaseModel, Field, ValidationError

from ._errors import (
    DuplicateDocIdError,
    MalformedCsvError,
    MissingColumnError,
    MissingSpeakerError,
    ReservedGroupError,
)
from ._types import AnalysisUnit, Document, Mode
from .textproc import (
    StopwordSet,
    Tokenizer,
    count_words,
    default_stopwords,
    preprocess,
    whitespace_tokenize,
)

logger = logging.getLogger(__name__)

TOTAL_GROUP = "total"


class CorpusStatsRow(BaseModel):
    group: str
    n_docs: int = Field(ge=0)
    mean_words: float = Field(ge=0.0, description="Mean raw whitespace tokens.")


def group_sort_key(group: str) -> tuple[int, float, str]:
    """Numeric labels (school grades) first in numeric order, then the rest."""
    try:
        return (0, float(group), group)
    except ValueError:
        return (1, math.inf, group)


def load_corpus(
    path: Union[str, Path],
    id_col: str = "id",
    text_col: str = "text",
    group_col: str = "grade",
    speaker_col: Optional[str] = None,
    seq_col: Optional[str] = None,
) -> list[Document]:
    """Read a corpus CSV with one document per row.

    Documents without a ``seq_col`` value are ordered by file position.

    Raises:
        FileNotFoundError: If ``path`` does not exist.
        MalformedCsvError: If the CSV cannot be parsed, or a row has an empty id
            or group.
        MissingColumnError: If a named column is absent.
        DuplicateDocIdError: If two rows share an id.
    """
    path = Path(path)
    if not path.is_file():
        msg = f"Corpus file not found: {path}"
        raise FileNotFoundError(msg)
    try:
        frame = pd.read_csv(
            path,
            dtype=str,
            keep_default_na=False,
            encoding="utf-8",
            skip_blank_lines=True,
        )
    except pd.errors.EmptyDataError:
        logger.warning("Corpus %s is empty", path)
        return []
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        msg = f"Could not parse corpus {path}: {e}"
        raise MalformedCsvError(msg) from e

    columns = [str(c) for c in frame.columns]
    for column in (id_col, text_col, group_col, speaker_col, seq_col):
        if column is not None and column not in columns:
            raise MissingColumnError(column, columns)

    documents: list[Document] = []
    seen: set[str] = set()
    for position, row in enumerate(frame.itertuples(index=False)):
        record = dict(zip(columns, row))
        doc_id = record[id_col].strip()
        seq = position
        if seq_col is not None and record[seq_col].strip():
            try:
                seq = int(record[seq_col])
            except ValueError:
                msg = f"Row {position + 2}: {seq_col}={record[seq_col]!r} is not an integer"
                raise MalformedCsvError(msg) from None
        speaker = record[speaker_col].strip() if speaker_col else ""
        try:
            document = Document(
                doc_id=doc_id,
                text=record[text_col],
                group=record[group_col].strip(),
                speaker=speaker or None,
                seq=seq,
            )
        except ValidationError as e:
            source = {"doc_id": id_col, "group": group_col}
            fields = ", ".join(
                source.get(str(err["loc"][0]), str(err["loc"][0])) for err in e.errors()
            )
            msg = f"Row {position + 2}: empty or invalid {fields}"
            raise MalformedCsvError(msg) from e
        if doc_id in seen:
            raise DuplicateDocIdError(doc_id)
        seen.add(doc_id)
        documents.append(document)
    logger.info("Loaded %d documents from %s", len(documents), path)
    return documents


def filter_by_length(
    docs: Sequence[Document],
    min_words: int = 0,
    max_words: Optional[int] = None,
    stopwords: Optional[StopwordSet] = None,
    tokenizer: Tokenizer = whitespace_tokenize,
) -> list[Document]:
    """Keep documents whose stopword-free token count is in ``[min_words, max_words]``.

    ``max_words=None`` leaves the upper end open.
    """
    if min_words < 0 or (max_words is not None and max_words < min_words):
        msg = f"Invalid length bounds [{min_words}, {max_words}]"
        raise ValueError(msg)
    stops = default_stopwords() if stopwords is None else stopwords
    kept = []
    for doc in docs:
        n = len(preprocess(doc.text, stops, doc_id=doc.doc_id, tokenizer=tokenizer).tokens)
        if n >= min_words and (max_words is None or n <= max_words):
            kept.append(doc)
    if len(kept) != len(docs):
        logger.info(
            "Length filter [%s, %s] kept %d of %d documents",
            min_words,
            max_words,
            len(kept),
            len(docs),
        )
    return kept


def _ordered(docs: Iterable[tuple[int, Document]]) -> list[Document]:
    return [
        doc
        for _, doc in sorted(
            docs,
            key=lambda item: (
                item[1].seq if item[1].seq is not None else item[0],
                item[1].doc_id,
            ),
        )
    ]


def assemble_units(
    docs: Sequence[Document],
    mode: Mode = "instance",
    stopwords: Optional[StopwordSet] = None,
    tokenizer: Tokenizer = whitespace_tokenize,
) -> list[AnalysisUnit]:
    """Group documents into analysis units.

    ``instance`` makes one unit per document, ``speaker`` one per speaker and
    ``meta-speaker`` one per group. Multi-document units concatenate their
    documents' tokens in ascending ``seq`` order, ties broken by ``doc_id``.
    A speaker unit takes the group of its earliest document.

    Raises:
        MissingSpeakerError: In ``speaker`` mode, if a document has no speaker.
    """
    stops = default_stopwords() if stopwords is None else stopwords
    sequences = {
        doc.doc_id: preprocess(doc.text, stops, doc_id=doc.doc_id, tokenizer=tokenizer)
        for doc in docs
    }

    if mode == "instance":
        return [
            AnalysisUnit(
                unit_id=doc.doc_id,
                mode=mode,
                group=doc.group,
                doc_ids=[doc.doc_id],
                tokens=sequences[doc.doc_id].tokens,
                n_raw_tokens=sequences[doc.doc_id].n_raw_tokens,
            )
            for doc in docs
        ]

    buckets: dict[str, list[tuple[int, Document]]] = {}
    for position, doc in enumerate(docs):
        if mode == "speaker":
            if not doc.speaker:
                raise MissingSpeakerError(doc.doc_id)
            key = doc.speaker
        else:
            key = doc.group
        buckets.setdefault(key, []).append((position, doc))

    units = []
    for key, members in buckets.items():
        ordered = _ordered(members)
        tokens: list[str] = []
        n_raw = 0
        for doc in ordered:
            tokens.extend(sequences[doc.doc_id].tokens)
            n_raw += sequences[doc.doc_id].n_raw_tokens
        units.append(
            AnalysisUnit(
                unit_id=key,
                mode=mode,
                group=ordered[0].group,
                doc_ids=[doc.doc_id for doc in ordered],
                tokens=tokens,
                n_raw_tokens=n_raw,
            )
        )
    return units


def corpus_stats(docs: Sequence[Document]) -> list[CorpusStatsRow]:
    """Documents and mean raw word count per group, plus a ``total`` row.

    Raises:
        ReservedGroupError: If a document's group is labelled ``total``.
    """
    if not docs:
        return []
    counts: dict[str, list[int]] = {}
    for doc in docs:
        if doc.group == TOTAL_GROUP:
            raise ReservedGroupError(doc.group)
        counts.setdefault(doc.group, []).append(count_words(doc.text))
    rows = [
        CorpusStatsRow(
            group=group,
            n_docs=len(words),
            mean_words=sum(words) / len(words),
        )
        for group, words in sorted(counts.items(), key=lambda kv: group_sort_key(kv[0]))
    ]
    all_words = [n for words in counts.values() for n in words]
    rows.append(
        CorpusStatsRow(
            group=TOTAL_GROUP,
            n_docs=len(all_words),
            mean_words=sum(all_words) / len(all_words),
        )
    )
    return rows
