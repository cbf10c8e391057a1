"""Run configuration shared by the command line and the batch pipeline."""

from __future__ import annotations

import json
from collections.abc import Mapping
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ._errors import ConfigError
from ._types import Mode, PeakReference
from .dynamics import Ddof, RatePool
from .lexicon import Lexicon, LexiconFormat, Rescale
from .report import OutputFormat


class LexiconSpec(BaseModel):
    """Where a lexicon lives and how to read it."""

    model_config = ConfigDict(frozen=True)

    path: str
    format: LexiconFormat = "single-dimension"
    rescale: Rescale = "none"
    dimension: Optional[str] = Field(
        default=None, description="Dimension name of a single-dimension file."
    )


class RunConfig(BaseModel):
    """Every setting of one analysis run.

    A run is deterministic: the same inputs and configuration produce
    byte-identical outputs, so no seed is kept.
    """

    model_config = ConfigDict(frozen=True)

    lexicons: tuple[LexiconSpec, ...] = ()
    dimensions: tuple[str, ...] = Field(
        default=(), description="Dimensions to analyse; empty means every loaded one."
    )
    window: int = Field(default=5, description="Emotion words per arc window.")
    step: int = Field(default=1, description="Emotion words between window starts.")
    min_emotion_words: int = Field(
        default=5, description="Units with fewer emotion words are excluded."
    )
    homebase_k: float = Field(default=1.0, gt=0.0)
    neutral_half_width: float = Field(default=0.0, ge=0.0)
    min_units: int = Field(default=5, ge=1)
    mode: Mode = "instance"
    min_words: int = Field(default=0, ge=0)
    max_words: Optional[int] = Field(default=None, ge=0)
    stopwords_path: Optional[str] = None
    ddof: Ddof = 0
    peak_reference: PeakReference = "mean"
    rate_pool: RatePool = "complete"
    workers: int = Field(default=1, ge=1)
    output_format: OutputFormat = "csv"
    outputs: dict[str, str] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_windows(self) -> RunConfig:
        if self.window < 1 or self.step < 1:
            msg = f"window and step must be at least 1, got {self.window}/{self.step}"
            raise ConfigError(msg)
        if self.min_emotion_words < self.window:
            msg = (
                f"min_emotion_words ({self.min_emotion_words}) must be at least "
                f"window ({self.window})"
            )
            raise ConfigError(msg)
        if self.max_words is not None and self.max_words < self.min_words:
            msg = f"max_words ({self.max_words}) is below min_words ({self.min_words})"
            raise ConfigError(msg)
        return self

    def resolve_dimensions(self, registry: Mapping[str, Lexicon]) -> list[str]:
        """Dimensions to analyse, checked against the loaded lexicons.

        Raises:
            ConfigError: If a configured dimension is not scored by any lexicon.
        """
        if not self.dimensions:
            return list(registry)
        missing = [d for d in self.dimensions if d not in registry]
        if missing:
            msg = (
                f"Dimension(s) {', '.join(missing)} not found in any lexicon; "
                f"loaded: {', '.join(registry) or 'none'}"
            )
            raise ConfigError(msg)
        return list(self.dimensions)

    def manifest(self, **extra: Any) -> str:
        """JSON echo of the configuration plus ``extra`` run information."""
        payload = {"config": self.model_dump(mode="json"), **extra}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
