"""Packaged data files and environment lookups."""

from __future__ import annotations

import os
from importlib import resources
from typing import Optional

LEXICON_ENV_VAR = "UED_LEXICON"


def get_lexicon_path(lexicon_path: Optional[str] = None) -> str:
    """Retrieve the lexicon path from argument or environment variables.

    Args:
        lexicon_path: Optional path to a lexicon file.

    Returns:
        Lexicon path string.

    Raises:
        ValueError: If no lexicon path is found.
    """
    if lexicon_path:
        return lexicon_path

    env_path = os.environ.get(LEXICON_ENV_VAR)
    if env_path:
        return env_path

    msg = (
        "Emotion lexicon not found. Please pass a lexicon or lexicon_path, or set "
        f"the {LEXICON_ENV_VAR} environment variable."
    )
    raise ValueError(msg)


def data_text(name: str) -> str:
    """Return the text of a file shipped in ``langchain_emotion_dynamics/data``."""
    return (
        resources.files("langchain_emotion_dynamics")
        .joinpath("data")
        .joinpath(name)
        .read_text(encoding="utf-8")
    )
