from importlib import metadata

from langchain_emotion_dynamics._errors import EmotionDynamicsError
from langchain_emotion_dynamics._types import (
    AnalysisUnit,
    Displacement,
    Document,
    EmotionArc,
    GroupSummary,
    HomeBase,
    NeutralBand,
    ReferenceOverlay,
    ScoredSequence,
    TokenSequence,
    UedMetrics,
)
from langchain_emotion_dynamics.arcs import build_arc, emotion_word_sequence
from langchain_emotion_dynamics.config import RunConfig
from langchain_emotion_dynamics.dynamics import home_base, ued_metrics
from langchain_emotion_dynamics.dynamics_tool import EmotionDynamicsTool
from langchain_emotion_dynamics.lexicon import Lexicon, load_lexicon

try:
    __version__ = metadata.version(__package__ or __name__)
except metadata.PackageNotFoundError:
    # Case where package metadata is not available.
    __version__ = ""
del metadata  # optional, avoids polluting the results of dir(__package__)

__all__ = [
    "AnalysisUnit",
    "Displacement",
    "Document",
    "EmotionArc",
    "EmotionDynamicsError",
    "EmotionDynamicsTool",
    "GroupSummary",
    "HomeBase",
    "Lexicon",
    "NeutralBand",
    "ReferenceOverlay",
    "RunConfig",
    "ScoredSequence",
    "TokenSequence",
    "UedMetrics",
    "__version__",
    "build_arc",
    "emotion_word_sequence",
    "home_base",
    "load_lexicon",
    "ued_metrics",
]
