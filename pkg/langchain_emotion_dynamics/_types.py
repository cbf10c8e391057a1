"""Common types for emotion arcs and utterance emotion dynamics."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, model_validator

Mode = Literal["instance", "speaker", "meta-speaker"]
Metric = Literal["average", "variability", "rise_rate", "recovery_rate"]
Direction = Literal["above", "below"]
Truncation = Literal["none", "at_start", "at_end", "both"]
PeakReference = Literal["mean", "boundary"]

METRICS: tuple[Metric, ...] = ("average", "variability", "rise_rate", "recovery_rate")

# Dimensions reported in this order; anything else sorts alphabetically after.
DIMENSION_ORDER: tuple[str, ...] = (
    "valence",
    "arousal",
    "dominance",
    "anger",
    "fear",
    "joy",
    "sadness",
)


def dimension_sort_key(dimension: str) -> tuple[int, str]:
    """Sort key placing known emotion dimensions first, in reporting order."""
    if dimension in DIMENSION_ORDER:
        return (DIMENSION_ORDER.index(dimension), "")
    return (len(DIMENSION_ORDER), dimension)


class NeutralBand(BaseModel):
    """Band of scores treated as emotionally neutral."""

    model_config = ConfigDict(frozen=True)

    half_width: float = Field(
        default=0.0,
        ge=0.0,
        description="Scores within this distance of the centre are neutral.",
    )
    center: float = Field(
        default=0.0,
        description="Centre of the neutral band (0 for signed, rescaled scores).",
    )

    def is_neutral(self, score: float) -> bool:
        """Return whether ``score`` falls inside the band (edges inclusive)."""
        return abs(score - self.center) <= self.half_width


class TokenSequence(BaseModel):
    """Normalised tokens of one document, in source order."""

    doc_id: str = Field(default="", description="Identifier of the source document.")
    tokens: list[str] = Field(
        default_factory=list,
        description="Lowercase, punctuation-free, stopword-free tokens.",
    )
    n_raw_tokens: int = Field(
        default=0,
        ge=0,
        description="Token count after punctuation stripping, before stopword removal.",
    )

    @model_validator(mode="after")
    def _check_tokens(self) -> TokenSequence:
        for token in self.tokens:
            if not token or any(ch.isspace() for ch in token):
                msg = f"Invalid token {token!r} in document {self.doc_id!r}"
                raise ValueError(msg)
            if token != token.lower():
                msg = f"Token {token!r} in document {self.doc_id!r} is not lowercase"
                raise ValueError(msg)
        if len(self.tokens) > self.n_raw_tokens:
            msg = "n_raw_tokens cannot be smaller than the number of kept tokens"
            raise ValueError(msg)
        return self


class ScoredSequence(BaseModel):
    """Scores of the emotion words of one document for one dimension."""

    model_config = ConfigDict(frozen=True)

    doc_id: str
    dimension: str
    scores: tuple[float, ...] = ()
    n_tokens: int = Field(
        default=0,
        ge=0,
        description="Length of the token sequence the scores were drawn from.",
    )

    @property
    def n_emotion_words(self) -> int:
        return len(self.scores)

    @property
    def coverage(self) -> float:
        """Share of tokens that are emotion words (0 for an empty document)."""
        return len(self.scores) / self.n_tokens if self.n_tokens else 0.0


class EmotionArc(BaseModel):
    """Window-averaged emotion values of one analysis unit."""

    model_config = ConfigDict(frozen=True)

    doc_id: str
    dimension: str
    points: tuple[float, ...] = ()
    window: int = Field(default=5, ge=1)
    step: int = Field(default=1, ge=1)

    def __len__(self) -> int:
        return len(self.points)


class HomeBase(BaseModel):
    """Steady emotional state of an arc: the band ``mean ± k * stdev``."""

    model_config = ConfigDict(frozen=True)

    mean: float
    stdev: float = Field(ge=0.0)
    k: float = Field(default=1.0, ge=0.0)

    @property
    def low(self) -> float:
        return self.mean - self.k * self.stdev

    @property
    def high(self) -> float:
        return self.mean + self.k * self.stdev

    def contains(self, point: float) -> bool:
        """Return whether ``point`` is inside home base (boundaries inclusive)."""
        return self.low <= point <= self.high


class Displacement(BaseModel):
    """One excursion of an arc outside its home base.

    ``pre_exit_idx`` is absent when the excursion starts at the first arc point
    and ``return_idx`` is absent when it is still running at the last one.
    """

    model_config = ConfigDict(frozen=True)

    pre_exit_idx: Optional[int] = None
    exit_idx: int = Field(ge=0)
    peak_idx: int = Field(ge=0)
    return_idx: Optional[int] = None
    direction: Direction
    truncated: Truncation = "none"

    @model_validator(mode="after")
    def _check_order(self) -> Displacement:
        if self.pre_exit_idx is not None and self.pre_exit_idx + 1 != self.exit_idx:
            msg = "pre_exit_idx must immediately precede exit_idx"
            raise ValueError(msg)
        if self.peak_idx < self.exit_idx:
            msg = "peak_idx cannot precede exit_idx"
            raise ValueError(msg)
        if self.return_idx is not None and self.return_idx <= self.peak_idx:
            msg = "return_idx must follow peak_idx"
            raise ValueError(msg)
        expected = {
            (False, False): "none",
            (True, False): "at_start",
            (False, True): "at_end",
            (True, True): "both",
        }[(self.pre_exit_idx is None, self.return_idx is None)]
        if self.truncated != expected:
            msg = f"truncated should be {expected!r} for these indices"
            raise ValueError(msg)
        return self

    @property
    def has_rise(self) -> bool:
        return self.pre_exit_idx is not None

    @property
    def has_recovery(self) -> bool:
        return self.return_idx is not None


class UedMetrics(BaseModel):
    """Utterance emotion dynamics of one analysis unit for one dimension."""

    model_config = ConfigDict(frozen=True)

    doc_id: str
    dimension: str
    group: Optional[str] = None
    n_tokens: Optional[int] = Field(default=None, ge=0)
    n_emotion_words: Optional[int] = Field(default=None, ge=0)
    arc_len: int = Field(ge=0)
    average: float
    variability: float = Field(ge=0.0)
    rise_rate: Optional[float] = Field(default=None, ge=0.0)
    recovery_rate: Optional[float] = Field(default=None, ge=0.0)
    n_displacements: int = Field(default=0, ge=0)
    n_complete: int = Field(default=0, ge=0)
    n_truncated: int = Field(default=0, ge=0)
    mean_peak_distance: Optional[float] = Field(
        default=None,
        ge=0.0,
        description="Diagnostic only: mean peak distance over all displacements.",
    )

    @model_validator(mode="after")
    def _check_counts(self, info: ValidationInfo) -> UedMetrics:
        if self.n_complete + self.n_truncated != self.n_displacements:
            msg = "n_complete + n_truncated must equal n_displacements"
            raise ValueError(msg)
        if self.n_complete and (self.rise_rate is None or self.recovery_rate is None):
            msg = "rates must be present when a complete displacement exists"
            raise ValueError(msg)
        # a reloaded variability is rounded, so 0 may stand for a tiny spread
        rounded = bool(info.context and info.context.get("rounded"))
        if self.variability == 0 and self.n_displacements and not rounded:
            msg = "a constant arc cannot have displacements"
            raise ValueError(msg)
        return self

    def metric(self, name: Metric) -> Optional[float]:
        """Return the value of one headline metric."""
        return getattr(self, name)


class Document(BaseModel):
    """One text of a corpus with its grouping metadata."""

    doc_id: str = Field(min_length=1)
    text: str = ""
    group: str = Field(min_length=1, description="Group label, e.g. a school grade.")
    speaker: Optional[str] = None
    seq: Optional[int] = Field(
        default=None, description="Temporal ordinal within speaker or group."
    )


class AnalysisUnit(BaseModel):
    """Token stream analysed as one emotion arc."""

    unit_id: str
    mode: Mode
    group: str
    doc_ids: list[str] = Field(default_factory=list)
    tokens: list[str] = Field(default_factory=list)
    n_raw_tokens: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_mode(self) -> AnalysisUnit:
        if self.mode == "instance" and len(self.doc_ids) != 1:
            msg = "an instance unit holds exactly one document"
            raise ValueError(msg)
        return self

    def token_sequence(self) -> TokenSequence:
        return TokenSequence(
            doc_id=self.unit_id, tokens=self.tokens, n_raw_tokens=self.n_raw_tokens
        )


class GroupSummary(BaseModel):
    """Mean of one metric over the units of a group."""

    model_config = ConfigDict(frozen=True)

    group: str
    dimension: str
    metric: Metric
    value: Optional[float] = Field(
        default=None, description="Absent when too few units define the metric."
    )
    n_units: int = Field(ge=0, description="Units contributing a defined value.")


class ReferenceOverlay(BaseModel):
    """Reference metric values (e.g. adult poems) keyed by dimension and metric."""

    values: dict[str, dict[Metric, float]] = Field(default_factory=dict)

    def get(self, dimension: str, metric: Metric) -> Optional[float]:
        return self.values.get(dimension, {}).get(metric)


class OverlayRow(BaseModel):
    """Group series of one (dimension, metric) next to its reference value."""

    dimension: str
    metric: Metric
    reference: float
    groups: list[str] = Field(default_factory=list)
    values: list[Optional[float]] = Field(default_factory=list)
    n_units: list[int] = Field(default_factory=list)
    nearest_group: Optional[str] = None
