"""Emotion dynamics tool."""

from __future__ import annotations

from typing import Any, Optional

from langchain_core.callbacks import (
    AsyncCallbackManagerForToolRun,
    CallbackManagerForToolRun,
)
from langchain_core.tools import BaseTool
from pydantic import BaseModel, Field, model_validator

from ._resources import get_lexicon_path
from .arcs import build_arc, emotion_word_sequence
from .dynamics import ued_metrics
from .lexicon import (
    Lexicon,
    LexiconFormat,
    default_rescale,
    load_lexicon,
    peek_dimensions,
    sniff_format,
)
from .textproc import StopwordSet, default_stopwords, load_stopwords, preprocess


class EmotionDynamicsInput(BaseModel):
    """Input schema for the emotion dynamics tool."""

    text: str = Field(description="Text whose emotional arc should be analysed.")
    dimensions: Optional[list[str]] = Field(
        default=None,
        description="Emotion dimensions to analyse, e.g. ['valence', 'arousal']. "
        "Defaults to every dimension of the lexicon.",
    )
    window: int = Field(
        default=5,
        ge=1,
        description="Number of consecutive emotion words averaged per arc point.",
    )
    k: float = Field(
        default=1.0,
        gt=0.0,
        description="Home base half-width in standard deviations around the mean.",
    )
    include_arc: bool = Field(
        default=False, description="Whether to return the arc points themselves."
    )


class EmotionDynamicsTool(BaseTool):
    """Utterance emotion dynamics of a piece of text.

    Builds an emotion arc from the lexicon words of the text and reports its
    average, variability, rise rate and recovery rate per emotion dimension.

    Setup:
        Install ``langchain-emotion-dynamics`` and point ``UED_LEXICON`` at a
        word-emotion lexicon, or pass one in.

        .. code-block:: bash

            pip install -U langchain-emotion-dynamics
            export UED_LEXICON="/data/NRC-VAD-Lexicon.txt"

    Key init args:
        lexicon: Optional[Lexicon]
            Preloaded lexicon. Takes precedence over ``lexicon_path``.
        lexicon_path: Optional[str]
            Lexicon file, read from UED_LEXICON if not provided.
        stopwords_path: Optional[str]
            Stopword list; the packaged English list is used by default.

    Instantiation:
        .. code-block:: python

            from langchain_emotion_dynamics import EmotionDynamicsTool

            tool = EmotionDynamicsTool(lexicon_path="NRC-VAD-Lexicon.txt")

    Basic Usage:
        .. code-block:: python

            result = tool.invoke({
                "text": "I was so happy at the party, then sad and lonely...",
                "dimensions": ["valence"],
                "include_arc": True,
            })

    Response Format:
        .. code-block:: python

            {
                "tokens": 42,
                "metrics": [
                    {
                        "doc_id": "input",
                        "dimension": "valence",
                        "arc_len": 9,
                        "average": 0.31,
                        "variability": 0.12,
                        "rise_rate": 0.05,
                        "recovery_rate": 0.04,
                        ...
                    }
                ],
                "excluded": [],
                "arcs": {"valence": [0.28, 0.33, ...]}
            }

    Dimensions with fewer than ``min_emotion_words`` emotion words are listed
    under ``excluded`` instead of ``metrics``.
    """

    name: str = "emotion_dynamics"
    """The name that is passed to the model when performing tool calling."""

    description: str = (
        "Measure how emotions change across a text. Returns the average emotional "
        "state, how much it varies, how quickly it rises to peaks and how quickly "
        "it recovers, for dimensions such as valence, arousal and dominance."
    )
    """The description that is passed to the model when performing tool calling."""

    args_schema: type[BaseModel] = EmotionDynamicsInput
    """The schema that is passed to the model when performing tool calling."""

    lexicon: Optional[Lexicon] = Field(default=None)
    """Preloaded lexicon."""

    lexicon_path: Optional[str] = Field(default=None)
    """Lexicon file. If not provided, will be read from UED_LEXICON env var."""

    lexicon_format: Optional[LexiconFormat] = Field(default=None)
    """Layout of ``lexicon_path``; guessed from the file when unset."""

    stopwords_path: Optional[str] = Field(default=None)
    """Stopword list; defaults to the packaged English list."""

    min_emotion_words: int = Field(default=5, ge=1)
    """Dimensions with fewer emotion words than this are not analysed."""

    neutral_half_width: float = Field(default=0.0, ge=0.0)
    """Half-width of the neutral band of signed lexicons."""

    _stopwords: StopwordSet = frozenset()

    @model_validator(mode="after")
    def validate_environment(self) -> EmotionDynamicsTool:
        """Load the lexicon and stopwords once."""
        if self.lexicon is None:
            path = get_lexicon_path(self.lexicon_path)
            fmt = self.lexicon_format or sniff_format(path)
            self.lexicon = load_lexicon(
                path, fmt, default_rescale(peek_dimensions(path, fmt))
            )
        self._stopwords = (
            load_stopwords(self.stopwords_path)
            if self.stopwords_path
            else default_stopwords()
        )
        return self

    def _analyse(
        self,
        text: str,
        dimensions: Optional[list[str]],
        window: int,
        k: float,
        *,
        include_arc: bool,
    ) -> dict[str, Any]:
        lexicon = self.lexicon
        if lexicon is None:
            msg = "No lexicon loaded"
            raise ValueError(msg)
        tokens = preprocess(text, self._stopwords, doc_id="input")
        required = max(self.min_emotion_words, window)
        result: dict[str, Any] = {
            "tokens": len(tokens.tokens),
            "metrics": [],
            "excluded": [],
        }
        arcs: dict[str, list[float]] = {}
        for dimension in dimensions or list(lexicon.dimension_names):
            seq = emotion_word_sequence(
                tokens,
                lexicon,
                dimension.lower(),
                lexicon.default_band(self.neutral_half_width),
            )
            if seq.n_emotion_words < required:
                result["excluded"].append(seq.dimension)
                continue
            arc = build_arc(seq, window)
            metrics = ued_metrics(arc, k).model_copy(
                update={
                    "n_tokens": seq.n_tokens,
                    "n_emotion_words": seq.n_emotion_words,
                }
            )
            result["metrics"].append(metrics.model_dump(exclude={"group"}))
            arcs[seq.dimension] = list(arc.points)
        if include_arc:
            result["arcs"] = arcs
        return result

    def _run(
        self,
        text: str,
        dimensions: Optional[list[str]] = None,
        window: int = 5,
        k: float = 1.0,
        *,
        include_arc: bool = False,
        run_manager: Optional[CallbackManagerForToolRun] = None,
    ) -> dict[str, Any]:
        """Compute emotion dynamics of ``text``.

        Args:
            text: Text to analyse
            dimensions: Emotion dimensions to analyse
            window: Emotion words per arc point
            k: Home base half-width in standard deviations
            include_arc: Whether to return the arc points
            run_manager: Callback manager for the tool run

        Returns:
            Dictionary with per-dimension metrics and excluded dimensions
        """
        if run_manager:
            run_manager.on_text(
                f"Analysing emotion dynamics of {len(text.split())} words\n",
                color="blue",
            )
        try:
            result = self._analyse(
                text, dimensions, window, k, include_arc=include_arc
            )
        except Exception as e:
            if run_manager:
                run_manager.on_text(f"Analysis failed: {e!s}\n", color="red")
            msg = f"Error computing emotion dynamics: {e!s}"
            raise ValueError(msg) from e

        if run_manager:
            if result["excluded"]:
                run_manager.on_text(
                    f"Too few emotion words for: {', '.join(result['excluded'])}\n",
                    color="yellow",
                )
            run_manager.on_text(
                f"Analysis completed: {len(result['metrics'])} dimensions\n",
                color="green",
            )
        return result

    async def _arun(
        self,
        text: str,
        dimensions: Optional[list[str]] = None,
        window: int = 5,
        k: float = 1.0,
        *,
        include_arc: bool = False,
        run_manager: Optional[AsyncCallbackManagerForToolRun] = None,
    ) -> dict[str, Any]:
        """Async compute emotion dynamics of ``text``; the analysis runs inline."""
        if run_manager:
            await run_manager.on_text(
                f"Analysing emotion dynamics of {len(text.split())} words\n",
                color="blue",
            )
        try:
            result = self._analyse(
                text, dimensions, window, k, include_arc=include_arc
            )
        except Exception as e:
            if run_manager:
                await run_manager.on_text(f"Analysis failed: {e!s}\n", color="red")
            msg = f"Error computing emotion dynamics: {e!s}"
            raise ValueError(msg) from e

        if run_manager:
            if result["excluded"]:
                await run_manager.on_text(
                    f"Too few emotion words for: {', '.join(result['excluded'])}\n",
                    color="yellow",
                )
            await run_manager.on_text(
                f"Analysis completed: {len(result['metrics'])} dimensions\n",
                color="green",
            )
        return result
