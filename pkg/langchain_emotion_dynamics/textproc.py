"""Text normalisation: HTML unescaping, tokenizing, punctuation and stopword removal."""

from __future__ import annotations

import html
import logging
import string
from collections.abc import Iterable
from functools import lru_cache
from pathlib import Path
from typing import Callable, Union

from ._resources import data_text
from ._types import TokenSequence

logger = logging.getLogger(__name__)

StopwordSet = frozenset[str]
Tokenizer = Callable[[str], list[str]]

# ASCII punctuation plus typographic quotes, dashes and ellipses common in poems
PUNCTUATION = string.punctuation + "‘’“”«»…–—¡¿"

DEFAULT_STOPWORDS_FILE = "stopwords_en.txt"


def whitespace_tokenize(text: str) -> list[str]:
    """Split on runs of whitespace."""
    return text.split()


def _parse_stopwords(lines: Iterable[str]) -> StopwordSet:
    return frozenset(word for word in (line.strip().lower() for line in lines) if word)


def load_stopwords(path: Union[str, Path]) -> StopwordSet:
    """Load a stopword list with one term per line.

    Terms are lowercased and duplicates collapse; an empty file gives an empty set.

    Raises:
        FileNotFoundError: If ``path`` does not exist.
    """
    path = Path(path)
    if not path.is_file():
        msg = f"Stopword file not found: {path}"
        raise FileNotFoundError(msg)
    stopwords = _parse_stopwords(path.read_text(encoding="utf-8").splitlines())
    logger.info("Loaded %d stopwords from %s", len(stopwords), path)
    return stopwords


@lru_cache(maxsize=1)
def default_stopwords() -> StopwordSet:
    """The packaged English stopword list."""
    return _parse_stopwords(data_text(DEFAULT_STOPWORDS_FILE).splitlines())


def normalize_tokens(raw: str, tokenizer: Tokenizer = whitespace_tokenize) -> list[str]:
    """Unescape, tokenize, strip edge punctuation and lowercase ``raw``.

    Tokens made only of punctuation are dropped. Word-internal apostrophes and
    hyphens are kept.
    """
    tokens = []
    for token in tokenizer(html.unescape(raw)):
        stripped = token.strip(PUNCTUATION)
        if stripped:
            tokens.append(stripped.lower())
    return tokens


def preprocess(
    raw: str,
    stopwords: StopwordSet,
    *,
    doc_id: str = "",
    tokenizer: Tokenizer = whitespace_tokenize,
) -> TokenSequence:
    """Turn raw document text into a stopword-free token sequence.

    Args:
        raw: Document text, possibly HTML-escaped.
        stopwords: Lowercase terms to drop.
        doc_id: Identifier recorded on the result.
        tokenizer: Splits unescaped text into candidate tokens.

    Returns:
        Tokens in source order, with the count before stopword removal.
    """
    tokens = normalize_tokens(raw, tokenizer)
    kept = [token for token in tokens if token not in stopwords]
    return TokenSequence(doc_id=doc_id, tokens=kept, n_raw_tokens=len(tokens))


def count_words(text: str) -> int:
    """Number of whitespace-separated tokens in the raw text."""
    return len(text.split())
